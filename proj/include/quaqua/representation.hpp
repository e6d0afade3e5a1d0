#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>

namespace quaqua {

using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class Axis { X, Y, Z };

/// Label of the unique odd-dimensional irreducible representation of SO(3):
/// index k gives dimension 2k+1. Basis vectors are indexed by the weight
/// m = -k..k in ascending order, the eigenbasis of the z-axis rotations.
struct Irrep {
    int k;

    explicit constexpr Irrep(int index) : k(index) {
        if (k < 0) throw std::invalid_argument("Irrep: index must be non-negative");
    }
    constexpr int dim() const { return 2 * k + 1; }
};

namespace detail {

inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

inline double ipow(double base, int exp) {
    double out = 1.0;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace detail

/// Angular momentum generator J_axis in the weight basis. J_z is diag(m);
/// J_x and J_y come from the ladder coefficients sqrt((k-m)(k+m+1)).
/// All three are Hermitian with spectrum {-k, ..., k}.
inline CMat angular_momentum(Axis axis, Irrep rep) {
    const int n = rep.dim();
    const double k = static_cast<double>(rep.k);
    CMat J = CMat::Zero(n, n);
    switch (axis) {
        case Axis::Z:
            for (int r = 0; r < n; ++r) J(r, r) = Complex(r - rep.k, 0.0);
            break;
        case Axis::X:
            for (int r = 0; r + 1 < n; ++r) {
                const double m = r - k;
                const double c = 0.5 * std::sqrt((k - m) * (k + m + 1.0));
                J(r + 1, r) = Complex(c, 0.0);
                J(r, r + 1) = Complex(c, 0.0);
            }
            break;
        case Axis::Y:
            for (int r = 0; r + 1 < n; ++r) {
                const double m = r - k;
                const double c = 0.5 * std::sqrt((k - m) * (k + m + 1.0));
                J(r + 1, r) = Complex(0.0, -c);  // J_y = (J+ - J-)/(2i)
                J(r, r + 1) = Complex(0.0, c);
            }
            break;
    }
    return J;
}

namespace detail {

struct YEigenSystem {
    RVec values;
    CMat vectors;
};

// The eigendecomposition of J_y is the only expensive primitive that gets
// re-requested constantly (every y- and x-rotation needs it), so it is
// memoized per irrep index.
inline const YEigenSystem& y_eigensystem(Irrep rep) {
    static std::mutex guard;
    static std::map<int, YEigenSystem> cache;
    std::scoped_lock lock(guard);
    auto it = cache.find(rep.k);
    if (it == cache.end()) {
        Eigen::SelfAdjointEigenSolver<CMat> es(angular_momentum(Axis::Y, rep));
        if (es.info() != Eigen::Success)
            throw std::runtime_error("y_eigensystem: eigensolver failed");
        it = cache.emplace(rep.k, YEigenSystem{es.eigenvalues(), es.eigenvectors()}).first;
    }
    return it->second;
}

inline CVec z_phases(Irrep rep, double theta) {
    const int n = rep.dim();
    CVec p(n);
    for (int r = 0; r < n; ++r) {
        const double m = r - rep.k;
        p(r) = std::exp(Complex(0.0, -m * theta));
    }
    return p;
}

}  // namespace detail

/// Image of the rotation about `axis` by `theta` in H_{2k+1}.
///
/// Conventions: rotation(Z, ., theta) is diagonal with entry exp(-i m theta)
/// at weight m; rotation(Y, ., theta) is the real orthogonal Wigner small-d
/// matrix, built by exponentiating J_y through its eigendecomposition;
/// rotation(X, ., theta) = rotation(Z, -pi/2) rotation(Y, theta) rotation(Z, pi/2).
inline CMat rotation(Axis axis, Irrep rep, double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("rotation: theta must be finite");
    const int n = rep.dim();
    switch (axis) {
        case Axis::Z:
            return CMat(detail::z_phases(rep, theta).asDiagonal());
        case Axis::Y: {
            const auto& ys = detail::y_eigensystem(rep);
            CVec phases(n);
            for (int r = 0; r < n; ++r) phases(r) = std::exp(Complex(0.0, -ys.values(r) * theta));
            return ys.vectors * phases.asDiagonal() * ys.vectors.adjoint();
        }
        case Axis::X: {
            // Conjugating the y-rotation by z-quarter-turn phases costs O(n^2).
            CMat d = rotation(Axis::Y, rep, theta);
            const CVec left = detail::z_phases(rep, -kPi / 2.0);
            const CVec right = detail::z_phases(rep, kPi / 2.0);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) d(r, c) *= left(r) * right(c);
            return d;
        }
    }
    throw std::logic_error("rotation: unreachable");
}

/// Wigner small-d matrix via the closed-form factorial sum, evaluated with
/// log-factorials. Accurate for small k; the alternating sum cancels badly
/// for large k, which is why rotation() exponentiates generators instead.
/// Kept as an independent construction path for cross-checks.
inline RMat small_d(Irrep rep, double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("small_d: theta must be finite");
    using detail::ipow;
    using detail::log_factorial;
    const int k = rep.k;
    const int n = rep.dim();
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    RMat d(n, n);
    for (int mp = -k; mp <= k; ++mp) {
        for (int m = -k; m <= k; ++m) {
            const double pref = 0.5 * (log_factorial(k + mp) + log_factorial(k - mp) +
                                       log_factorial(k + m) + log_factorial(k - m));
            const int lo = std::max(0, m - mp);
            const int hi = std::min(k + m, k - mp);
            double sum = 0.0;
            for (int t = lo; t <= hi; ++t) {
                const double sign = ((mp - m + t) % 2 != 0) ? -1.0 : 1.0;
                const double mag = std::exp(pref - log_factorial(k + m - t) - log_factorial(t) -
                                            log_factorial(mp - m + t) - log_factorial(k - mp - t));
                sum += sign * mag * ipow(c, 2 * k - 2 * t + m - mp) * ipow(s, mp - m + 2 * t);
            }
            d(mp + k, m + k) = sum;
        }
    }
    return d;
}

/// Character of H_{2k+1}: sin((2k+1) theta/2) / sin(theta/2), with the
/// removable singularity at theta = 0 (mod 2pi) filled by 2k+1.
inline double character(Irrep rep, double theta) {
    const double t = std::remainder(theta, 2.0 * kPi);
    if (std::abs(t) < 1e-12) return static_cast<double>(rep.dim());
    return std::sin((2 * rep.k + 1) * t / 2.0) / std::sin(t / 2.0);
}

/// Unitary change of basis from the k=1 weight basis (m = -1, 0, +1) to the
/// Cartesian basis (x, y, z): columns are the weight-basis coordinates of
/// the Cartesian unit vectors. Conjugating by it turns the 3-dimensional
/// representation matrices into the classical rotation matrices.
inline Eigen::Matrix3cd weight_to_cartesian() {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    Eigen::Matrix3cd c;
    c << Complex(r, 0.0), i * r, Complex(0.0, 0.0),
         Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0),
         Complex(-r, 0.0), i * r, Complex(0.0, 0.0);
    return c;
}

/// Express a k=1 weight-basis operator in the Cartesian basis.
inline Eigen::Matrix3cd to_cartesian(const CMat& weight_basis_op) {
    if (weight_basis_op.rows() != 3 || weight_basis_op.cols() != 3)
        throw std::invalid_argument("to_cartesian: expects a 3x3 operator");
    const Eigen::Matrix3cd c = weight_to_cartesian();
    return c.adjoint() * weight_basis_op * c;
}

}  // namespace quaqua
