#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quaqua/block_decomposition.hpp"
#include "quaqua/group_ring.hpp"

namespace quaqua {

/// Absolute single-linkage clustering tolerance. The interesting eigenvalues
/// (1/8, 1/4, 1/2) are separated by 1/8, so this sits far below the spacing
/// and far above double-precision noise at the matrix sizes involved.
inline constexpr double kClusterTol = 1e-7;

/// Imaginary parts at or below this are treated as numerical zero when
/// reporting cluster centroids.
inline constexpr double kImagDropTol = 1e-8;

/// Tolerance on structural residuals of the quaquaversal operator before the
/// block-diagonal spectrum path refuses to proceed.
inline constexpr double kBlockGateTol = 1e-6;

struct EigCluster {
    Complex value;     // multiplicity-weighted centroid, imag dropped if tiny
    int multiplicity;
    double spread;     // max distance of members from the centroid
};

struct SpectrumReport {
    int k;
    std::vector<EigCluster> clusters;
    double realness_residual;                   // max |Im lambda|
    std::vector<double> trace_moment_residuals;  // |sum lambda^p - tr(M^p)|, p = 1..6
    double spectral_radius;
    double gap;  // 1 - spectral_radius

    int total_multiplicity() const {
        int n = 0;
        for (const auto& c : clusters) n += c.multiplicity;
        return n;
    }

    /// Summed multiplicity of clusters within `tol` of a target value.
    int multiplicity_near(double target, double tol = kClusterTol) const {
        int n = 0;
        for (const auto& c : clusters)
            if (std::abs(c.value - Complex(target, 0.0)) <= tol) n += c.multiplicity;
        return n;
    }
};

/// Single-linkage clustering: sort by real part (ties by imaginary part) and
/// start a new cluster whenever the gap to the previous eigenvalue exceeds
/// the tolerance.
inline std::vector<EigCluster> cluster_eigenvalues(std::vector<Complex> values,
                                                   double tol = kClusterTol) {
    std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<EigCluster> clusters;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= values.size(); ++i) {
        if (i == values.size() || std::abs(values[i] - values[i - 1]) > tol) {
            Complex centroid(0.0, 0.0);
            for (std::size_t j = start; j < i; ++j) centroid += values[j];
            centroid /= static_cast<double>(i - start);
            double spread = 0.0;
            for (std::size_t j = start; j < i; ++j)
                spread = std::max(spread, std::abs(values[j] - centroid));
            if (std::abs(centroid.imag()) <= kImagDropTol) centroid = Complex(centroid.real(), 0.0);
            clusters.push_back({centroid, static_cast<int>(i - start), spread});
            start = i;
        }
    }
    return clusters;
}

namespace detail {

inline std::vector<double> trace_moment_residuals(const CMat& m, const std::vector<Complex>& eigs,
                                                  int max_power = 6) {
    std::vector<double> out;
    out.reserve(max_power);
    CMat mp = CMat::Identity(m.rows(), m.cols());
    std::vector<Complex> ep(eigs.size(), Complex(1.0, 0.0));
    for (int p = 1; p <= max_power; ++p) {
        mp = mp * m;
        Complex sum(0.0, 0.0);
        for (std::size_t i = 0; i < eigs.size(); ++i) {
            ep[i] *= eigs[i];
            sum += ep[i];
        }
        out.push_back(std::abs(sum - mp.trace()));
    }
    return out;
}

inline SpectrumReport make_report(Irrep rep, const CMat& zhat, std::vector<Complex> eigs,
                                  double realness, double cluster_tol) {
    double radius = 0.0;
    for (const Complex& v : eigs) radius = std::max(radius, std::abs(v));
    SpectrumReport report{rep.k,
                          cluster_eigenvalues(eigs, cluster_tol),
                          realness,
                          trace_moment_residuals(zhat, eigs),
                          radius,
                          1.0 - radius};
    return report;
}

}  // namespace detail

/// Spectrum of the quaquaversal operator computed through the block
/// decomposition: each diagonal block is Hermitian, so a self-adjoint
/// eigensolver applies per block and the union of the block spectra is the
/// full (real) spectrum. Refuses to proceed if the structural residuals
/// exceed kBlockGateTol, which would invalidate the path.
inline SpectrumReport block_spectrum(Irrep rep, double cluster_tol = kClusterTol) {
    const CMat zhat = evaluate(quaquaversal_element(), rep);
    const Partition part = Partition::build(rep);
    const BlockGrid grid = block_grid(zhat, part);
    const StructureReport structure = structure_report(grid);
    if (structure.max_residual() > kBlockGateTol)
        throw std::runtime_error(
            "block_spectrum: structural residual " + std::to_string(structure.max_residual()) +
            " at k=" + std::to_string(rep.k) + " invalidates the block path");

    std::vector<Complex> eigs;
    eigs.reserve(rep.dim());
    for (int i = 0; i < 4; ++i) {
        const CMat& b = grid.blocks[i][i];
        if (b.rows() == 0) continue;
        const CMat herm = 0.5 * (b + b.adjoint());
        Eigen::SelfAdjointEigenSolver<CMat> es(herm, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("block_spectrum: eigensolver failed on diagonal block " +
                                     std::to_string(i) + " at k=" + std::to_string(rep.k));
        for (int r = 0; r < es.eigenvalues().size(); ++r)
            eigs.emplace_back(es.eigenvalues()(r), 0.0);
    }
    return detail::make_report(rep, zhat, std::move(eigs), 0.0, cluster_tol);
}

/// Spectrum of the quaquaversal operator from a general complex eigensolver
/// on the full matrix, with no structural assumptions. Independent
/// cross-check of block_spectrum; its realness residual is the numerical
/// test of the real-spectrum property.
inline SpectrumReport dense_spectrum(Irrep rep, double cluster_tol = kClusterTol) {
    const CMat zhat = evaluate(quaquaversal_element(), rep);
    Eigen::ComplexEigenSolver<CMat> es(zhat, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense_spectrum: eigensolver did not converge at k=" +
                                 std::to_string(rep.k) + " (n=" + std::to_string(rep.dim()) +
                                 ", |z|_F=" + std::to_string(zhat.norm()) + ")");
    std::vector<Complex> eigs(es.eigenvalues().data(),
                              es.eigenvalues().data() + es.eigenvalues().size());
    double realness = 0.0;
    for (const Complex& v : eigs) realness = std::max(realness, std::abs(v.imag()));
    return detail::make_report(rep, zhat, std::move(eigs), realness, cluster_tol);
}

/// Hausdorff distance between two eigenvalue multisets.
inline double spectrum_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    auto one_sided = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
        double worst = 0.0;
        for (const Complex& x : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Complex& y : to) best = std::min(best, std::abs(x - y));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

inline std::vector<Complex> cluster_values_expanded(const SpectrumReport& r) {
    std::vector<Complex> out;
    for (const auto& c : r.clusters) out.insert(out.end(), c.multiplicity, c.value);
    return out;
}

/// Predicted eigenvalue multiplicities for k >= 1.
///
/// d is the common dimension of the three non-(+1,+1) eigenspaces. q is the
/// numerically computed dimension of the (+1)-eigenspace of T + T^-1
/// restricted to the (+1,-1) space; it fixes the floor for eigenvalue 1/8.
/// Two closed-form candidates for q are reported alongside: floor((k+4)/5)
/// and the count of weights m in [-k, k] with m = 1 (mod 6). The numeric q
/// is authoritative; the candidates are reported for comparison only.
struct MultiplicityPrediction {
    int k;
    int d;               // (2k+1 - (-1)^k)/4
    int q;               // numeric: dim of the (+1)-eigenspace of T+T^-1 on (+1,-1)
    int floor_quarter;   // predicted multiplicity floor of eigenvalue 1/4: d
    int floor_half;      // predicted multiplicity floor of eigenvalue 1/2: 2d - q
    int floor_eighth;    // predicted multiplicity floor of eigenvalue 1/8: q
    int div5_formula;   // floor((k+4)/5)
    int mod6_count;      // #{m in [-k, k] : m = 1 (mod 6)}
    bool q_matches_div5_formula;
    bool q_matches_mod6_count;
};

inline MultiplicityPrediction predicted_multiplicities(Irrep rep) {
    if (rep.k < 1) throw std::invalid_argument("predicted_multiplicities: requires k >= 1");
    const int d = predicted_dims(rep)[1];

    const CMat basis = eigenspace_basis(rep, default_pair(), {+1, -1});
    const CMat t = rotation(Axis::X, rep, kPi / 3.0);
    const CMat t_plus = t + t.adjoint();
    int q = 0;
    if (basis.cols() > 0) {
        const CMat restricted = basis.adjoint() * t_plus * basis;
        Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (restricted + restricted.adjoint()),
                                               Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("predicted_multiplicities: eigensolver failed");
        for (int r = 0; r < es.eigenvalues().size(); ++r)
            if (std::abs(es.eigenvalues()(r) - 1.0) <= kClusterTol) ++q;
    }

    int mod6 = 0;
    for (int m = -rep.k; m <= rep.k; ++m)
        if (((m % 6) + 6) % 6 == 1) ++mod6;
    const int div5 = (rep.k + 4) / 5;

    return {rep.k, d,     q,           d,           2 * d - q, q,
            div5,  mod6,  q == div5,   q == mod6};
}

/// Checks the computed spectrum against the multiplicity floors: eigenvalue
/// 1/4 and 1/2 with multiplicity >= d each (the two scalar blocks), 1/8 with
/// multiplicity >= q. Returns a structured record and never throws.
struct MultiplicityCheck {
    int k = 0;
    bool pass = false;
    int required_quarter = 0, required_half = 0, required_eighth = 0;
    int observed_quarter = 0, observed_half = 0, observed_eighth = 0;
    std::string error;  // non-empty if the computation itself failed
};

inline MultiplicityCheck check_multiplicities(Irrep rep) {
    MultiplicityCheck check;
    check.k = rep.k;
    try {
        const MultiplicityPrediction pred = predicted_multiplicities(rep);
        const SpectrumReport spectrum = block_spectrum(rep);
        check.required_quarter = pred.d;
        check.required_half = pred.d;
        check.required_eighth = pred.q;
        check.observed_quarter = spectrum.multiplicity_near(0.25);
        check.observed_half = spectrum.multiplicity_near(0.5);
        check.observed_eighth = spectrum.multiplicity_near(0.125);
        check.pass = check.observed_quarter >= check.required_quarter &&
                     check.observed_half >= check.required_half &&
                     check.observed_eighth >= check.required_eighth;
    } catch (const std::exception& e) {
        check.pass = false;
        check.error = e.what();
    }
    return check;
}

/// Eigenvalue range of the (+1,+1) diagonal block (S + S^-1 + T + T^-1 + 4)/8,
/// the one block whose fine spectrum has no closed form. Empty optional when
/// the block has dimension zero (k = 1). The range always lies in [0, 1].
inline std::optional<std::pair<double, double>> first_block_range(Irrep rep) {
    const Partition part = Partition::build(rep);
    if (part.dims[0] == 0) return std::nullopt;
    const CMat block = predicted_diagonal_blocks(part)[0];
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (block + block.adjoint()),
                                           Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("first_block_range: eigensolver failed");
    const auto& vals = es.eigenvalues();
    return std::make_pair(vals(0), vals(vals.size() - 1));
}

struct GapRow {
    int k;
    double spectral_radius;
    double gap;
    double realness_residual;
    double running_max_radius;
};

/// Spectral radius of the quaquaversal operator on H_{2k+1} for k = 1..k_max
/// with the running maximum radius. In every such representation the radius
/// stays strictly below 1 (the eigenvalue 1 lives only in the trivial
/// representation); the observed magnitude is reported, not asserted
/// against any constant.
inline std::vector<GapRow> gap_scan(int k_max) {
    if (k_max < 1) throw std::invalid_argument("gap_scan: k_max must be >= 1");
    std::vector<GapRow> rows;
    rows.reserve(k_max);
    double running = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        const SpectrumReport r = dense_spectrum(Irrep(k));
        running = std::max(running, r.spectral_radius);
        rows.push_back({k, r.spectral_radius, r.gap, r.realness_residual, running});
    }
    return rows;
}

}  // namespace quaqua
