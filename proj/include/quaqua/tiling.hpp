#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "quaqua/group_ring.hpp"

namespace quaqua {

/// Exact enumeration of a generation is allowed only up to this many words.
inline constexpr std::int64_t kMaxExactWords = 10'000'000;

/// 8^N as a 64-bit count. N <= 7 stays within the exact-enumeration bound.
inline std::int64_t generation_size(int generation) {
    if (generation < 0) throw std::invalid_argument("generation_size: negative generation");
    std::int64_t n = 1;
    for (int i = 0; i < generation; ++i) {
        if (n > kMaxExactWords) break;  // saturate, callers only compare against the bound
        n *= 8;
    }
    return n;
}

/// Lazily enumerates the 8^N orientation words of generation N in
/// lexicographic order of the daughter indices (first index most
/// significant). Each yielded word is the normalized product of the chosen
/// daughters' orientation words.
class CousinWordRange {
public:
    explicit CousinWordRange(int generation) : generation_(generation) {
        count_ = generation_size(generation);
        if (count_ > kMaxExactWords)
            throw std::domain_error("CousinWordRange: 8^" + std::to_string(generation) +
                                    " exceeds the exact enumeration bound");
    }

    class Iterator {
    public:
        using value_type = Word;
        using difference_type = std::ptrdiff_t;

        Iterator(const CousinWordRange* range, std::int64_t index)
            : range_(range), index_(index) {}

        Word operator*() const {
            const auto& daughters = range_->daughters_;
            std::int64_t rem = index_;
            Word w;
            // Peel digits from the most significant end for lexicographic order.
            for (int level = range_->generation_ - 1; level >= 0; --level) {
                std::int64_t scale = 1;
                for (int i = 0; i < level; ++i) scale *= 8;
                const int digit = static_cast<int>(rem / scale);
                rem %= scale;
                w = w * daughters[digit];
            }
            return w;
        }

        Iterator& operator++() {
            ++index_;
            return *this;
        }
        Iterator operator++(int) {
            Iterator old = *this;
            ++index_;
            return old;
        }
        friend bool operator==(const Iterator& a, const Iterator& b) {
            return a.index_ == b.index_;
        }

    private:
        const CousinWordRange* range_;
        std::int64_t index_;
    };

    Iterator begin() const { return Iterator(this, 0); }
    Iterator end() const { return Iterator(this, count_); }
    std::int64_t size() const { return count_; }
    int generation() const { return generation_; }

private:
    int generation_;
    std::int64_t count_;
    std::array<Word, 8> daughters_ = daughter_words();
};

/// Materialized generation; intended for small N (tests, demos).
inline std::vector<Word> cousin_words(int generation) {
    CousinWordRange range(generation);
    return std::vector<Word>(range.begin(), range.end());
}

/// One uniformly sampled generation-N orientation word, with the seed and
/// the chosen daughter indices kept for provenance. Deterministic in the
/// seed: each level draws three bits from a seeded mt19937_64.
struct OrientationSample {
    Word word;
    std::vector<int> daughter_indices;
    std::uint64_t seed;
};

inline OrientationSample sample_cousin(int generation, std::uint64_t seed) {
    if (generation < 0) throw std::invalid_argument("sample_cousin: negative generation");
    std::mt19937_64 rng(seed);
    const std::array<Word, 8> daughters = daughter_words();
    OrientationSample sample{Word::identity(), {}, seed};
    sample.daughter_indices.reserve(generation);
    for (int level = 0; level < generation; ++level) {
        const int digit = static_cast<int>(rng() & 7u);  // 8 divides 2^64: no modulo bias
        sample.daughter_indices.push_back(digit);
        sample.word = sample.word * daughters[digit];
    }
    return sample;
}

namespace detail {

inline CMat matrix_power(const CMat& m, int exponent) {
    CMat out = CMat::Identity(m.rows(), m.cols());
    for (int i = 0; i < exponent; ++i) out = out * m;
    return out;
}

}  // namespace detail

/// Frobenius distance between the exact average of the generation-N
/// orientation words and the N-th power of the averaging operator. Zero in
/// exact arithmetic; the numerical value is the enumeration cross-check.
inline double moment_residual(Irrep rep, int generation) {
    CousinWordRange range(generation);
    WordEvaluator eval(rep);
    CMat acc = CMat::Zero(rep.dim(), rep.dim());
    for (const Word& w : range) acc += eval(w);
    acc /= static_cast<double>(range.size());
    const CMat zn = detail::matrix_power(evaluate(quaquaversal_element(), rep), generation);
    return (acc - zn).norm();
}

struct SampledMode {
    std::int64_t count;
    std::uint64_t seed;
};

/// Monte Carlo version of the moment residual: averages `mode.count`
/// uniformly sampled generation-N words. Deterministic for a fixed seed.
inline double moment_residual(Irrep rep, int generation, SampledMode mode) {
    if (mode.count <= 0) throw std::invalid_argument("moment_residual: sample count must be positive");
    std::mt19937_64 rng(mode.seed);
    const std::array<Word, 8> daughters = daughter_words();
    WordEvaluator eval(rep);
    CMat acc = CMat::Zero(rep.dim(), rep.dim());
    for (std::int64_t i = 0; i < mode.count; ++i) {
        Word w;
        for (int level = 0; level < generation; ++level)
            w = w * daughters[static_cast<int>(rng() & 7u)];
        acc += eval(w);
    }
    acc /= static_cast<double>(mode.count);
    const CMat zn = detail::matrix_power(evaluate(quaquaversal_element(), rep), generation);
    return (acc - zn).norm();
}

struct ConvergenceRow {
    int generation;
    double operator_norm;  // 2-norm of the N-th power of the averaging operator
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;  // N = 0..N_max
    double fitted_decay_rate;          // exp of the least-squares slope of log-norm vs N
};

/// Operator 2-norms of the powers of the averaging operator, plus a
/// log-linear fit of the decay. The fitted rate approaches the spectral
/// radius for large N; it is reported, not asserted.
inline ConvergenceTable convergence_table(Irrep rep, int n_max) {
    if (n_max < 0) throw std::invalid_argument("convergence_table: negative n_max");
    const CMat z = evaluate(quaquaversal_element(), rep);
    ConvergenceTable table;
    table.rows.reserve(n_max + 1);

    auto two_norm = [](const CMat& m) {
        if (m.rows() == 1) return std::abs(m(0, 0));
        Eigen::SelfAdjointEigenSolver<CMat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
        return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    };

    CMat power = CMat::Identity(rep.dim(), rep.dim());
    table.rows.push_back({0, two_norm(power)});
    for (int n = 1; n <= n_max; ++n) {
        power = power * z;
        table.rows.push_back({n, two_norm(power)});
    }

    // Least squares of log(norm) against N over N >= 1.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (const auto& row : table.rows) {
        if (row.generation == 0 || row.operator_norm <= 0.0) continue;
        const double x = row.generation, y = std::log(row.operator_norm);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    const double det = count * sxx - sx * sx;
    table.fitted_decay_rate = (count >= 2 && det != 0.0)
                                  ? std::exp((count * sxy - sx * sy) / det)
                                  : 1.0;
    return table;
}

}  // namespace quaqua
