#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "quaqua/group_ring.hpp"
#include "quaqua/representation.hpp"

namespace quaqua {

/// Ordered pair of distinct coordinate axes (v, w). The partition built from
/// it diagonalizes the two half-turns R_v^pi and R_w^pi jointly; the order
/// matters because the eigenvalue labels are (alpha, beta) = (v-eigenvalue,
/// w-eigenvalue).
struct AxisPair {
    Axis v;
    Axis w;

    AxisPair(Axis v_, Axis w_) : v(v_), w(w_) {
        if (v == w) throw std::invalid_argument("AxisPair: axes must differ");
    }
};

/// Default pair for the quaquaversal operator: alpha tracks S^2 = R_y^pi and
/// beta tracks T^3 = R_x^pi. This is the assignment pinned by the k=1
/// computation in scripts/derive_k1_golden.py.
inline AxisPair default_pair() { return AxisPair(Axis::Y, Axis::X); }

struct EigenspaceLabel {
    int alpha;  // +1 or -1, eigenvalue of the half-turn about the first axis
    int beta;   // +1 or -1, eigenvalue of the half-turn about the second axis
};

/// Fixed enumeration order of the four joint eigenspaces.
inline constexpr std::array<EigenspaceLabel, 4> label_order{
    {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}};

inline constexpr int label_index(EigenspaceLabel l) {
    return (l.alpha > 0 ? 0 : 2) + (l.beta > 0 ? 0 : 1);
}

/// Closed-form dimensions of the four joint eigenspaces, in label order:
/// (2k+1+3(-1)^k)/4 for (+1,+1) and (2k+1-(-1)^k)/4 for the other three.
inline std::array<int, 4> predicted_dims(Irrep rep) {
    const int n = rep.dim();
    const int sign = (rep.k % 2 == 0) ? 1 : -1;
    const int d11 = (n + 3 * sign) / 4;
    const int d = (n - sign) / 4;
    return {d11, d, d, d};
}

/// Spectral projection onto the joint eigenspace with the given label:
/// (1/4)(I + alpha R_v^pi + beta R_w^pi + alpha beta R_v^pi R_w^pi).
inline CMat projection(Irrep rep, AxisPair pair, EigenspaceLabel label) {
    const int n = rep.dim();
    const CMat rv = rotation(pair.v, rep, kPi);
    const CMat rw = rotation(pair.w, rep, kPi);
    const double a = static_cast<double>(label.alpha);
    const double b = static_cast<double>(label.beta);
    return 0.25 * (CMat::Identity(n, n) + a * rv + b * rw + (a * b) * (rv * rw));
}

namespace detail {

/// Orthonormal basis of the range of an orthogonal projection, extracted by
/// a rank-revealing QR with the rank fixed in advance by the trace.
inline CMat basis_of_projection(const CMat& p) {
    const double tr = p.trace().real();
    const double nearest = std::round(tr);
    if (std::abs(tr - nearest) > 1e-6)
        throw std::runtime_error("basis_of_projection: projection trace " + std::to_string(tr) +
                                 " is not near an integer");
    const int rank = static_cast<int>(nearest);
    const int n = static_cast<int>(p.rows());
    if (rank == 0) return CMat(n, 0);
    Eigen::ColPivHouseholderQR<CMat> qr(p);
    return qr.householderQ() * CMat::Identity(n, rank);
}

}  // namespace detail

/// Orthonormal basis (columns) of the joint eigenspace. Throws if the
/// projection trace is farther than 1e-6 from an integer, which would mean
/// the representation matrices themselves are broken.
inline CMat eigenspace_basis(Irrep rep, AxisPair pair, EigenspaceLabel label) {
    return detail::basis_of_projection(projection(rep, pair, label));
}

/// The ordered partition of H_{2k+1} into the four joint eigenspaces of
/// R_v^pi and R_w^pi, with per-label projections, orthonormal bases and
/// dimensions. Immutable after construction.
struct Partition {
    Irrep rep;
    AxisPair pair;
    std::array<CMat, 4> projections;
    std::array<CMat, 4> bases;  // n x dim_i, orthonormal columns
    std::array<int, 4> dims;

    static Partition build(Irrep rep, AxisPair pair) {
        const int n = rep.dim();
        const CMat rv = rotation(pair.v, rep, kPi);
        const CMat rw = rotation(pair.w, rep, kPi);
        const CMat rvw = rv * rw;
        const CMat id = CMat::Identity(n, n);
        Partition part{rep, pair, {}, {}, {}};
        for (int i = 0; i < 4; ++i) {
            const auto [alpha, beta] = label_order[i];
            const double a = alpha, b = beta;
            part.projections[i] = 0.25 * (id + a * rv + b * rw + (a * b) * rvw);
            part.bases[i] = detail::basis_of_projection(part.projections[i]);
            part.dims[i] = static_cast<int>(part.bases[i].cols());
        }
        return part;
    }

    static Partition build(Irrep rep) { return build(rep, default_pair()); }
};

/// 4x4 grid of sub-matrices of an operator with respect to a partition;
/// block (i, j) = B_i^dagger M B_j maps the j-th eigenspace into the i-th.
/// Blocks with an empty side have zero rows or columns.
struct BlockGrid {
    Partition partition;
    std::array<std::array<CMat, 4>, 4> blocks;

    double total_frobenius() const {
        double sq = 0.0;
        for (const auto& row : blocks)
            for (const auto& b : row) sq += b.squaredNorm();
        return std::sqrt(sq);
    }
};

inline BlockGrid block_grid(const CMat& m, Partition partition) {
    if (m.rows() != partition.rep.dim() || m.cols() != partition.rep.dim())
        throw std::invalid_argument("block_grid: operator size does not match partition");
    BlockGrid grid{std::move(partition), {}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            grid.blocks[i][j] = grid.partition.bases[i].adjoint() * m * grid.partition.bases[j];
    return grid;
}

/// Residuals of the structural claims, each relative to the Frobenius norm
/// of the whole operator (with an absolute floor of 1e-14):
///  - largest strictly-upper block norm (block lower-triangularity),
///  - largest Hermiticity defect of a diagonal block,
///  - norm of the ((+1,-1), (-1,+1)) block.
struct StructureReport {
    double upper_residual;
    double hermiticity_residual;
    double zero_block_residual;

    double max_residual() const {
        return std::max(upper_residual, std::max(hermiticity_residual, zero_block_residual));
    }
};

inline StructureReport structure_report(const BlockGrid& grid) {
    const double denom = std::max(grid.total_frobenius(), 1e-14);
    double upper = 0.0, herm = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (grid.blocks[i][i].size() > 0)
            herm = std::max(herm, (grid.blocks[i][i] - grid.blocks[i][i].adjoint()).norm());
        for (int j = i + 1; j < 4; ++j) upper = std::max(upper, grid.blocks[i][j].norm());
    }
    const double zero_block = grid.blocks[1][2].norm();
    return {upper / denom, herm / denom, zero_block / denom};
}

/// Residual report for the block-triangularity theorem applied to
/// A = R_v^theta + R_v^theta R_w^pi under the partition of (v, w).
/// The two leak residuals check the mapping facts behind the theorem:
/// the symmetrized part (R_v^theta + R_v^-theta)/2 must preserve each
/// eigenspace, and the antisymmetrized part must move it to the
/// beta-flipped eigenspace.
struct TheoremReport {
    StructureReport structure;
    double symmetric_leak;       // max over labels of |P_{a,-b} R+ P_{a,b}|
    double antisymmetric_leak;   // max over labels of |P_{a,b} R- P_{a,b}|

    double max_residual() const {
        return std::max(structure.max_residual(), std::max(symmetric_leak, antisymmetric_leak));
    }
};

inline TheoremReport verify_theorem(const Partition& part, double theta) {
    const Irrep rep = part.rep;
    const CMat rv = rotation(part.pair.v, rep, theta);
    const CMat rv_inv = rotation(part.pair.v, rep, -theta);
    const CMat rw_pi = rotation(part.pair.w, rep, kPi);

    const CMat a = rv + rv * rw_pi;
    const StructureReport structure = structure_report(block_grid(a, part));

    const CMat sym = 0.5 * (rv + rv_inv);
    const CMat antisym = 0.5 * (rv - rv_inv);
    const double sym_denom = std::max(sym.norm(), 1e-14);
    const double antisym_denom = std::max(antisym.norm(), 1e-14);
    double sym_leak = 0.0, antisym_leak = 0.0;
    for (const EigenspaceLabel label : label_order) {
        const CMat& p = part.projections[label_index(label)];
        const CMat& p_flip = part.projections[label_index({label.alpha, -label.beta})];
        sym_leak = std::max(sym_leak, (p_flip * sym * p).norm() / sym_denom);
        antisym_leak = std::max(antisym_leak, (p * antisym * p).norm() / antisym_denom);
    }
    return {structure, sym_leak, antisym_leak};
}

inline TheoremReport verify_theorem(Irrep rep, double theta, AxisPair pair) {
    return verify_theorem(Partition::build(rep, pair), theta);
}

/// The predicted diagonal blocks of the quaquaversal operator, expressed in
/// the partition bases and in label order. On the eigenspace where both
/// half-turns fix every vector the block is (S + S^-1 + T + T^-1 + 4)/8; on
/// the one fixed by R_y^pi only it is (-(T + T^-1) + 2)/8; the remaining two
/// blocks are the scalars (1/4) I and (1/2) I. Valid for the (y, x) pair and
/// its swap; the half-turn eigenvalues have no such closed form for pairs
/// that involve the z axis.
inline std::array<CMat, 4> predicted_diagonal_blocks(const Partition& part) {
    const bool yx = part.pair.v == Axis::Y && part.pair.w == Axis::X;
    const bool xy = part.pair.v == Axis::X && part.pair.w == Axis::Y;
    if (!yx && !xy)
        throw std::invalid_argument(
            "predicted_diagonal_blocks: closed forms exist only for the y/x axis pairs");

    const Irrep rep = part.rep;
    const int n = rep.dim();
    const CMat s = rotation(Axis::Y, rep, kPi / 2.0);
    const CMat t = rotation(Axis::X, rep, kPi / 3.0);
    const CMat id = CMat::Identity(n, n);
    const CMat first = (s + s.adjoint() + t + t.adjoint() + 4.0 * id) / 8.0;
    const CMat y_only = (-(t + t.adjoint()) + 2.0 * id) / 8.0;

    std::array<CMat, 4> out;
    for (int i = 0; i < 4; ++i) {
        const auto [alpha, beta] = label_order[i];
        const int y_ev = yx ? alpha : beta;  // eigenvalue of R_y^pi on this label
        const int x_ev = yx ? beta : alpha;  // eigenvalue of R_x^pi
        if (y_ev > 0 && x_ev > 0)
            out[i] = part.bases[i].adjoint() * first * part.bases[i];
        else if (y_ev > 0)
            out[i] = part.bases[i].adjoint() * y_only * part.bases[i];
        else if (x_ev > 0)
            out[i] = 0.25 * CMat::Identity(part.dims[i], part.dims[i]);
        else
            out[i] = 0.50 * CMat::Identity(part.dims[i], part.dims[i]);
    }
    return out;
}

inline std::array<CMat, 4> predicted_diagonal_blocks(Irrep rep) {
    return predicted_diagonal_blocks(Partition::build(rep));
}

}  // namespace quaqua
