#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "orbicert/types.hpp"
#include "orbicert/word.hpp"

namespace orbicert {

// A relator u^m: base word u with orbifold exponent m.
struct Relator {
    Word base;
    std::uint64_t exponent = 1;

    friend bool operator==(Relator const&, Relator const&) = default;
};

struct Presentation {
    std::vector<std::string> generator_names;
    std::vector<Relator> relators;

    std::size_t generator_count() const noexcept {
        return generator_names.size();
    }
    std::size_t relator_count() const noexcept { return relators.size(); }

    // u_i^{m_i} written out as a word.
    Word full_relator(std::size_t i) const {
        return power(relators[i].base,
                     static_cast<std::size_t>(relators[i].exponent));
    }

    friend bool operator==(Presentation const&, Presentation const&) = default;
};

namespace detail {

    // Upper bound on the length of any word produced by the parser.
    inline constexpr std::size_t max_word_length = 10'000'000;

    class Parser {
      public:
        explicit Parser(std::string_view text) : text_(text) {}

        Presentation presentation() {
            Presentation p;
            expect('<');
            do {
                auto [line, col] = position();
                std::string name = ident();
                if (index_.count(name) != 0) {
                    throw ParseError("duplicate generator '" + name + "'",
                                     line, col);
                }
                p.generator_names.push_back(name);
                index_.emplace(name, static_cast<Letter>(index_.size() + 1));
            } while (accept(','));
            expect('|');
            if (!peek_is('>')) {
                do {
                    p.relators.push_back(relator());
                } while (accept(','));
            }
            expect('>');
            skip_space();
            if (pos_ != text_.size()) {
                fail("unexpected trailing input");
            }
            return p;
        }

        // A bare product expression over known generators, no orbifold split.
        Word word(std::vector<std::string> const& names) {
            for (std::size_t j = 0; j < names.size(); ++j) {
                index_.emplace(names[j], static_cast<Letter>(j + 1));
            }
            skip_space();
            if (pos_ == text_.size()) {
                return Word{};
            }
            if (accept('1')) {
                skip_space();
                if (pos_ != text_.size()) {
                    fail("unexpected trailing input");
                }
                return Word{};
            }
            Word w = expand(factor());
            skip_space();
            if (pos_ != text_.size()) {
                fail("unexpected trailing input");
            }
            return w;
        }

      private:
        struct Term {
            Word base;
            std::int64_t exponent = 1;
            bool has_exponent = false;
        };

        Relator relator() {
            auto [line, col] = position();
            std::vector<Term> terms = factor();
            Relator r;
            if (peek_is('^')) {
                accept('^');
                auto [eline, ecol] = position();
                std::int64_t m = integer();
                if (m < 1) {
                    throw ParseError("exponent must be >= 1", eline, ecol);
                }
                r.base = expand(terms);
                r.exponent = static_cast<std::uint64_t>(m);
            } else if (terms.size() == 1 && terms[0].has_exponent &&
                       terms[0].exponent > 0) {
                r.base = terms[0].base;
                r.exponent = static_cast<std::uint64_t>(terms[0].exponent);
            } else {
                r.base = expand(terms);
            }
            r.base = cyclically_reduce(r.base);
            if (r.base.empty()) {
                throw ParseError("relator base word is empty after reduction",
                                 line, col);
            }
            return r;
        }

        std::vector<Term> factor() {
            std::vector<Term> terms;
            terms.push_back(term());
            while (accept('*')) {
                terms.push_back(term());
            }
            return terms;
        }

        Term term() {
            Term t;
            skip_space();
            if (accept('(')) {
                t.base = expand(factor());
                expect(')');
            } else {
                auto [line, col] = position();
                std::string name = ident();
                auto it = index_.find(name);
                if (it == index_.end()) {
                    throw ParseError("unknown generator '" + name + "'", line,
                                     col);
                }
                t.base = Word{it->second};
            }
            // A '^' followed by a signed integer binds to this term; the
            // caller decides whether a lone top-level power is the orbifold
            // exponent.
            if (peek_is('^')) {
                accept('^');
                auto [line, col] = position();
                std::int64_t e = integer();
                if (e == 0) {
                    throw ParseError("exponent must be >= 1", line, col);
                }
                t.exponent = e;
                t.has_exponent = true;
            }
            return t;
        }

        Word expand(std::vector<Term> const& terms) {
            std::vector<Letter> out;
            for (Term const& t : terms) {
                Word piece = t.exponent < 0 ? invert(t.base) : t.base;
                std::uint64_t reps = t.exponent < 0
                                         ? static_cast<std::uint64_t>(-t.exponent)
                                         : static_cast<std::uint64_t>(t.exponent);
                if (!piece.empty() &&
                    reps > (max_word_length - out.size()) / piece.size()) {
                    fail("word too long");
                }
                for (std::uint64_t k = 0; k < reps; ++k) {
                    out.insert(out.end(), piece.begin(), piece.end());
                }
            }
            return Word(std::move(out));
        }

        std::string ident() {
            skip_space();
            if (pos_ >= text_.size() ||
                !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
                fail("expected generator name");
            }
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_')) {
                advance();
            }
            return std::string(text_.substr(start, pos_ - start));
        }

        std::int64_t integer() {
            skip_space();
            bool negative = false;
            if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
                negative = text_[pos_] == '-';
                advance();
            }
            if (pos_ >= text_.size() ||
                !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                fail("expected integer");
            }
            std::int64_t value = 0;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                int digit = text_[pos_] - '0';
                if (value > (std::numeric_limits<std::int64_t>::max() - digit) / 10) {
                    fail("integer out of range");
                }
                value = value * 10 + digit;
                advance();
            }
            return negative ? -value : value;
        }

        void skip_space() {
            while (pos_ < text_.size()) {
                char c = text_[pos_];
                if (c == '#') {
                    while (pos_ < text_.size() && text_[pos_] != '\n') {
                        advance();
                    }
                } else if (std::isspace(static_cast<unsigned char>(c))) {
                    advance();
                } else {
                    break;
                }
            }
        }

        bool peek_is(char c) {
            skip_space();
            return pos_ < text_.size() && text_[pos_] == c;
        }

        bool accept(char c) {
            if (peek_is(c)) {
                advance();
                return true;
            }
            return false;
        }

        void expect(char c) {
            if (!accept(c)) {
                fail(std::string("expected '") + c + "'");
            }
        }

        void advance() {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }

        std::pair<std::size_t, std::size_t> position() {
            skip_space();
            return {line_, col_};
        }

        [[noreturn]] void fail(std::string const& msg) {
            throw ParseError(msg, line_, col_);
        }

        std::string_view text_;
        std::size_t pos_ = 0;
        std::size_t line_ = 1;
        std::size_t col_ = 1;
        std::unordered_map<std::string, Letter> index_;
    };

}  // namespace detail

// Parses "< x, y | x^2, y^3, (x*y)^5 >". A top-level trailing ^m on a relator
// is its orbifold exponent; base words are freely and cyclically reduced.
// Throws ParseError.
inline Presentation parse_presentation(std::string_view text) {
    return detail::Parser(text).presentation();
}

// Parses a product expression such as "x*y^-1" over the given generators.
// The empty string and "1" denote the identity.
inline Word parse_word(std::string_view text,
                       std::vector<std::string> const& generator_names) {
    return detail::Parser(text).word(generator_names);
}

inline std::string to_string(Word const& w,
                             std::vector<std::string> const& names) {
    if (w.empty()) {
        return "1";
    }
    std::string out;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) {
            ++j;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += names[static_cast<std::size_t>(std::abs(w[i])) - 1];
        long run = static_cast<long>(j - i);
        if (w[i] < 0) {
            out += "^" + std::to_string(-run);
        } else if (run > 1) {
            out += "^" + std::to_string(run);
        }
        i = j;
    }
    return out;
}

inline std::string to_string(Relator const& r,
                             std::vector<std::string> const& names) {
    if (r.base.size() == 1 && r.base[0] > 0) {
        std::string g = names[static_cast<std::size_t>(r.base[0]) - 1];
        return r.exponent == 1 ? g : g + "^" + std::to_string(r.exponent);
    }
    return "(" + to_string(r.base, names) + ")^" + std::to_string(r.exponent);
}

// Serializes in the grammar accepted by parse_presentation.
inline std::string to_string(Presentation const& p) {
    std::string out = "< ";
    for (std::size_t j = 0; j < p.generator_names.size(); ++j) {
        out += (j == 0 ? "" : ", ") + p.generator_names[j];
    }
    out += " |";
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
        out += (i == 0 ? " " : ", ") + to_string(p.relators[i], p.generator_names);
    }
    out += " >";
    return out;
}

// Warnings about relators whose base word is a proper power in the free
// group. Such presentations are accepted unchanged.
inline std::vector<std::string> presentation_warnings(Presentation const& p) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
        if (auto k = proper_power_exponent(p.relators[i].base)) {
            out.push_back("relator " + std::to_string(i + 1) + " base word " +
                          to_string(p.relators[i].base, p.generator_names) +
                          " is a proper power (exponent " + std::to_string(*k) +
                          ") in the free group");
        }
    }
    return out;
}

// Orbihedral Euler characteristic 1 - d + sum 1/m_i, exact.
inline Rational chi_orb(Presentation const& p) {
    Rational chi = 1 - static_cast<long>(p.generator_count());
    for (auto const& r : p.relators) {
        chi += Rational(1, Integer(r.exponent));
    }
    return chi;
}

}  // namespace orbicert
