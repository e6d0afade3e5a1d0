#pragma once

#include <cctype>
#include <charconv>
#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace quaqua {

/// The two tiling generators. S is the rotation about y by pi/2 (order 4 in
/// every representation), T the rotation about x by pi/3 (order 6).
enum class Generator { S, T };

inline constexpr int generator_order(Generator g) { return g == Generator::S ? 4 : 6; }

inline constexpr char generator_symbol(Generator g) { return g == Generator::S ? 'S' : 'T'; }

/// A word in S and T, stored normalized: adjacent factors use distinct
/// generators, exponents are reduced modulo the generator order into
/// [1, order), zero powers are dropped. The empty word is the identity.
///
/// Only the order relations S^4 = T^6 = 1 are used for normalization; no
/// other relation of the (infinite) group generated by S and T is applied.
class Word {
public:
    using Factor = std::pair<Generator, int>;

    Word() = default;

    static Word identity() { return Word(); }

    static Word from_factors(std::vector<Factor> raw) {
        Word w;
        for (const auto& [gen, exp] : raw) w.push_factor(gen, exp);
        return w;
    }

    /// Single power, e.g. power(S, 2) = S^2.
    static Word power(Generator g, int exp) { return from_factors({{g, exp}}); }

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_identity() const { return factors_.empty(); }

    /// Concatenation followed by normalization.
    friend Word operator*(const Word& a, const Word& b) {
        Word out = a;
        for (const auto& [gen, exp] : b.factors_) out.push_factor(gen, exp);
        return out;
    }

    friend auto operator<=>(const Word&, const Word&) = default;

    /// Render as whitespace-separated tokens, "S^2 T^3"; "1" for the identity.
    std::string str() const {
        if (factors_.empty()) return "1";
        std::string out;
        for (const auto& [gen, exp] : factors_) {
            if (!out.empty()) out += ' ';
            out += generator_symbol(gen);
            if (exp != 1) {
                out += '^';
                out += std::to_string(exp);
            }
        }
        return out;
    }

    /// Parse whitespace-separated generator^exponent tokens ("S", "T^-2",
    /// "S^2 T^3"); a sole "1" is the identity. Throws on malformed input.
    static Word parse(std::string_view text) {
        std::vector<Factor> raw;
        std::size_t pos = 0;
        bool saw_one = false;
        while (pos < text.size()) {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos >= text.size()) break;
            std::size_t end = pos;
            while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
            std::string_view tok = text.substr(pos, end - pos);
            pos = end;
            if (tok == "1") {
                saw_one = true;
                continue;
            }
            Generator gen;
            if (tok[0] == 'S' || tok[0] == 's')
                gen = Generator::S;
            else if (tok[0] == 'T' || tok[0] == 't')
                gen = Generator::T;
            else
                throw std::invalid_argument("Word::parse: unknown generator in '" + std::string(tok) + "'");
            int exp = 1;
            if (tok.size() > 1) {
                if (tok[1] != '^')
                    throw std::invalid_argument("Word::parse: expected '^' in '" + std::string(tok) + "'");
                const char* first = tok.data() + 2;
                const char* last = tok.data() + tok.size();
                auto [ptr, ec] = std::from_chars(first, last, exp);
                if (ec != std::errc() || ptr != last)
                    throw std::invalid_argument("Word::parse: bad exponent in '" + std::string(tok) + "'");
            }
            raw.emplace_back(gen, exp);
        }
        if (saw_one && !raw.empty())
            throw std::invalid_argument("Word::parse: '1' must stand alone");
        return from_factors(std::move(raw));
    }

private:
    void push_factor(Generator gen, int exp) {
        const int order = generator_order(gen);
        exp %= order;
        if (exp < 0) exp += order;
        if (exp == 0) return;
        if (!factors_.empty() && factors_.back().first == gen) {
            int merged = (factors_.back().second + exp) % order;
            factors_.pop_back();
            if (merged != 0) push_factor(gen, merged);
            // Dropping a factor can expose a new adjacent same-generator pair
            // only if the list alternated before, which it did, so no rescan
            // is needed beyond this recursive push.
        } else {
            factors_.emplace_back(gen, exp);
        }
    }

    std::vector<Factor> factors_;
};

}  // namespace quaqua
