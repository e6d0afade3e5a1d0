#!/usr/bin/env python3
"""Derive the k=1 reference data for the quaquaversal operator by hand.

Works entirely in exact arithmetic over Q[sqrt(3)] using the classical
3x3 rotation matrices, so every printed value is exact. The test suite
freezes these numbers; this script records where they come from.

Run:  python3 scripts/derive_k1_golden.py
"""

from fractions import Fraction

# ---------------------------------------------------------------------------
# Exact arithmetic over Q[sqrt(3)]: numbers of the form a + b*sqrt(3).
# ---------------------------------------------------------------------------


class Q3:
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, o):
        return Q3(self.a + o.a, self.b + o.b)

    def __mul__(self, o):
        # (a + b r)(c + d r) = ac + 3bd + (ad + bc) r,  r = sqrt(3)
        return Q3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    def __eq__(self, o):
        return self.a == o.a and self.b == o.b

    def scale(self, f):
        return Q3(self.a * f, self.b * f)

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt3"
        return f"{self.a}+{self.b}*sqrt3"


ZERO, ONE = Q3(0), Q3(1)
HALF = Q3(Fraction(1, 2))
ROOT3_HALF = Q3(0, Fraction(1, 2))  # sqrt(3)/2


def mat(rows):
    return [[r if isinstance(r, Q3) else Q3(r) for r in row] for row in rows]


def matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(3)), ZERO) for j in range(3)]
            for i in range(3)]


def matadd(A, B):
    return [[A[i][j] + B[i][j] for j in range(3)] for i in range(3)]


def matscale(A, f):
    return [[A[i][j].scale(f) for j in range(3)] for i in range(3)]


def show(name, A):
    print(f"{name} =")
    for row in A:
        print("   [" + ", ".join(f"{x!r:>14}" for x in row) + "]")


# ---------------------------------------------------------------------------
# Classical generators: S is the rotation about y by pi/2, T about x by pi/3.
# Right-handed active convention: R_x(t) = [[1,0,0],[0,c,-s],[0,s,c]], etc.
# ---------------------------------------------------------------------------

I3 = mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
S = mat([[0, 0, 1], [0, 1, 0], [-1, 0, 0]])                    # R_y(pi/2)
T = [[ONE, ZERO, ZERO],
     [ZERO, HALF, ROOT3_HALF.scale(-1)],
     [ZERO, ROOT3_HALF, HALF]]                                 # R_x(pi/3)


def power(A, n):
    out = I3
    for _ in range(n):
        out = matmul(out, A)
    return out


S2 = power(S, 2)
T3 = power(T, 3)
T4 = power(T, 4)

# The eight daughter orientations: three identities, S^2 T^3, T^4, T^4 S^2,
# S, S T^3.
daughters = [
    ("1", I3), ("1", I3), ("1", I3),
    ("S^2 T^3", matmul(S2, T3)),
    ("T^4", T4),
    ("T^4 S^2", matmul(T4, S2)),
    ("S", S),
    ("S T^3", matmul(S, T3)),
]

print("Daughter orientation matrices (classical 3x3):")
for name, M in daughters[2:]:
    show(f"  {name}", M)

acc = mat([[0, 0, 0], [0, 0, 0], [0, 0, 0]])
for _, M in daughters:
    acc = matadd(acc, M)
golden = matscale(acc, Fraction(1, 8))

print()
show("z = (1/8) * sum of daughters", golden)

trace = sum((golden[i][i] for i in range(3)), ZERO)
print(f"\ntrace(z) = {trace!r}")
assert trace == Q3(Fraction(7, 8))

# z is lower triangular in the Cartesian basis, so its spectrum is the
# diagonal.
diag = [golden[i][i] for i in range(3)]
print(f"spectrum(z) = diagonal = {diag!r}")
assert diag == [Q3(Fraction(1, 4)), Q3(Fraction(1, 8)), Q3(Fraction(1, 2))]
for i in range(3):
    for j in range(i + 1, 3):
        assert golden[i][j] == ZERO, "z must be lower triangular"

# Joint eigenspaces of the two half-turns R_y(pi) = S^2 and R_x(pi) = T^3:
# each Cartesian axis vector is a joint eigenvector; record (alpha, beta).
print("\nJoint half-turn eigenvalues (alpha = S^2, beta = T^3) and the")
print("diagonal entry of z on each axis vector:")
for idx, axis in enumerate(("x", "y", "z")):
    alpha = S2[idx][idx]
    beta = T3[idx][idx]
    print(f"  {axis}-axis: alpha={alpha!r}, beta={beta!r}, z_diag={golden[idx][idx]!r}")

# Expected assignment: x -> (-1,+1) with 1/4, y -> (+1,-1) with 1/8,
# z -> (-1,-1) with 1/2; the (+1,+1) space is empty at k=1.
assert (S2[0][0], T3[0][0], golden[0][0]) == (Q3(-1), ONE, Q3(Fraction(1, 4)))
assert (S2[1][1], T3[1][1], golden[1][1]) == (ONE, Q3(-1), Q3(Fraction(1, 8)))
assert (S2[2][2], T3[2][2], golden[2][2]) == (Q3(-1), Q3(-1), Q3(Fraction(1, 2)))

print("\nAll checks passed: trace 7/8, spectrum {1/4, 1/8, 1/2},")
print("block assignment (+1,+1)->empty, (+1,-1)->1/8, (-1,+1)->1/4, (-1,-1)->1/2.")
