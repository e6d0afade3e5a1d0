#pragma once

#include <array>
#include <map>
#include <optional>

#include "quaqua/rational.hpp"
#include "quaqua/representation.hpp"
#include "quaqua/word.hpp"

namespace quaqua {

/// Formal rational combination of words in S and T. Words are normalized,
/// zero coefficients are never stored.
class GroupRingElement {
public:
    GroupRingElement() = default;

    void add(const Word& w, Rational coeff) {
        if (coeff.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(w, coeff);
        if (!inserted) {
            it->second = it->second + coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const std::map<Word, Rational>& terms() const { return terms_; }
    std::size_t support_size() const { return terms_.size(); }

    Rational coefficient_sum() const {
        Rational s;
        for (const auto& [w, c] : terms_) s = s + c;
        return s;
    }

private:
    std::map<Word, Rational> terms_;
};

/// Evaluates words as operators on H_{2k+1} for a fixed irrep, caching the
/// generator power matrices. Evaluation multiplies one cached power per
/// factor, left to right.
class WordEvaluator {
public:
    explicit WordEvaluator(Irrep rep) : rep_(rep) {}

    Irrep irrep() const { return rep_; }

    const CMat& power(Generator g, int exp) const {
        const int order = generator_order(g);
        exp %= order;
        if (exp < 0) exp += order;
        auto& slot = (g == Generator::S) ? s_powers_[exp] : t_powers_[exp];
        if (!slot) {
            if (exp == 0) {
                slot = CMat::Identity(rep_.dim(), rep_.dim());
            } else if (g == Generator::S) {
                slot = rotation(Axis::Y, rep_, exp * kPi / 2.0);
            } else {
                slot = rotation(Axis::X, rep_, exp * kPi / 3.0);
            }
        }
        return *slot;
    }

    CMat operator()(const Word& w) const {
        CMat out = CMat::Identity(rep_.dim(), rep_.dim());
        for (const auto& [gen, exp] : w.factors()) out = out * power(gen, exp);
        return out;
    }

    CMat operator()(const GroupRingElement& e) const {
        CMat out = CMat::Zero(rep_.dim(), rep_.dim());
        for (const auto& [w, c] : e.terms()) out += c.to_double() * (*this)(w);
        return out;
    }

private:
    Irrep rep_;
    mutable std::array<std::optional<CMat>, 4> s_powers_;
    mutable std::array<std::optional<CMat>, 6> t_powers_;
};

inline CMat evaluate_word(const Word& w, Irrep rep) { return WordEvaluator(rep)(w); }

inline CMat evaluate(const GroupRingElement& e, Irrep rep) { return WordEvaluator(rep)(e); }

/// The eight daughter orientation words of the quaquaversal subdivision, in
/// fixed order: three identities, S^2 T^3, T^4, T^4 S^2, S, S T^3.
inline std::array<Word, 8> daughter_words() {
    const Word one = Word::identity();
    const Word s = Word::power(Generator::S, 1);
    const Word s2 = Word::power(Generator::S, 2);
    const Word t3 = Word::power(Generator::T, 3);
    const Word t4 = Word::power(Generator::T, 4);
    return {one, one, one, s2 * t3, t4, t4 * s2, s, s * t3};
}

/// The averaging element of the tiling: the uniform mean of the eight
/// daughter words, i.e. coefficient 3/8 on the identity and 1/8 on each of
/// the five nontrivial orientations.
inline GroupRingElement quaquaversal_element() {
    GroupRingElement z;
    for (const Word& w : daughter_words()) z.add(w, Rational(1, 8));
    return z;
}

}  // namespace quaqua
