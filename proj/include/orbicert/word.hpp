#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <optional>
#include <vector>

namespace orbicert {

// A letter is a signed generator index: +j is x_j, -j is x_j^-1 (j >= 1).
using Letter = int;

// Word in the free group on d generators.
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    Word(std::initializer_list<Letter> init) : letters(init) {}
    explicit Word(std::vector<Letter> l) : letters(std::move(l)) {}

    std::size_t size() const noexcept { return letters.size(); }
    bool empty() const noexcept { return letters.empty(); }
    auto begin() const noexcept { return letters.begin(); }
    auto end() const noexcept { return letters.end(); }
    Letter operator[](std::size_t i) const { return letters[i]; }

    friend bool operator==(Word const&, Word const&) = default;
    friend auto operator<=>(Word const&, Word const&) = default;
};

inline bool is_valid(Word const& w, std::size_t d) {
    return std::all_of(w.begin(), w.end(), [d](Letter a) {
        return a != 0 && static_cast<std::size_t>(std::abs(a)) <= d;
    });
}

inline Word free_reduce(Word const& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (Letter a : w) {
        if (!out.empty() && out.back() == -a) {
            out.pop_back();
        } else {
            out.push_back(a);
        }
    }
    return Word(std::move(out));
}

// Freely reduces, then strips matching inverse pairs from both ends. The
// result is a conjugate of w.
inline Word cyclically_reduce(Word const& w) {
    Word r = free_reduce(w);
    std::size_t lo = 0;
    std::size_t hi = r.size();
    while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
        ++lo;
        --hi;
    }
    return Word(std::vector<Letter>(r.letters.begin() + lo,
                                    r.letters.begin() + hi));
}

inline Word invert(Word const& w) {
    std::vector<Letter> out(w.letters.rbegin(), w.letters.rend());
    for (Letter& a : out) {
        a = -a;
    }
    return Word(std::move(out));
}

inline Word concat(Word const& a, Word const& b) {
    std::vector<Letter> out = a.letters;
    out.insert(out.end(), b.begin(), b.end());
    return Word(std::move(out));
}

inline Word power(Word const& w, std::size_t k) {
    std::vector<Letter> out;
    out.reserve(w.size() * k);
    for (std::size_t i = 0; i < k; ++i) {
        out.insert(out.end(), w.begin(), w.end());
    }
    return Word(std::move(out));
}

inline std::vector<std::int64_t> abelianize(Word const& w, std::size_t d) {
    std::vector<std::int64_t> v(d, 0);
    for (Letter a : w) {
        std::size_t j = static_cast<std::size_t>(std::abs(a)) - 1;
        v[j] += a > 0 ? 1 : -1;
    }
    return v;
}

// If the cyclically reduced word w equals r^k in the free group with k >= 2,
// returns the largest such k. A cyclically reduced word is a proper power
// exactly when it is a proper power of one of its prefixes.
inline std::optional<std::size_t> proper_power_exponent(Word const& w) {
    Word c = cyclically_reduce(w);
    std::size_t n = c.size();
    for (std::size_t period = 1; period <= n / 2; ++period) {
        if (n % period != 0) {
            continue;
        }
        bool periodic = true;
        for (std::size_t i = period; i < n && periodic; ++i) {
            periodic = c[i] == c[i - period];
        }
        if (periodic) {
            return n / period;
        }
    }
    return std::nullopt;
}

}  // namespace orbicert
