#pragma once

// Todd-Coxeter enumeration of the cosets of the trivial subgroup, i.e. of
// the elements of G. A closed table is the regular permutation
// representation of G; its 1-skeleton is the Cayley graph.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "orbicert/presentation.hpp"
#include "orbicert/word.hpp"

namespace orbicert {

// Coset numbers are 1-based; 0 marks an undefined table entry.
using Coset = std::uint32_t;

enum class Strategy { hlt, felsch };

inline std::string to_string(Strategy s) {
    return s == Strategy::hlt ? "hlt" : "felsch";
}

struct EnumerationLimits {
    std::size_t max_cosets = 1'000'000;
    Strategy strategy = Strategy::hlt;
};

struct EnumerationStats {
    std::size_t cosets_defined = 0;
    std::size_t max_live = 0;
};

// Permutation of {0, ..., n-1}; image of point i is perm[i].
using Permutation = std::vector<std::uint32_t>;

namespace detail {
    // Table column of a letter: x_j -> 2(j-1), x_j^-1 -> 2(j-1)+1.
    inline std::size_t column(Letter a) {
        return a > 0 ? 2 * static_cast<std::size_t>(a - 1)
                     : 2 * static_cast<std::size_t>(-a - 1) + 1;
    }
}  // namespace detail

class CosetTable {
  public:
    CosetTable(std::size_t generator_count, std::size_t size,
               std::vector<Coset> entries, EnumerationStats stats = {})
        : d_(generator_count),
          n_(size),
          entries_(std::move(entries)),
          stats_(stats) {
        if (entries_.size() != n_ * 2 * d_) {
            throw std::invalid_argument("coset table has wrong shape");
        }
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t generator_count() const noexcept { return d_; }
    EnumerationStats const& stats() const noexcept { return stats_; }

    Coset act(Coset c, Letter a) const {
        return entries_[(c - 1) * 2 * d_ + detail::column(a)];
    }

    Coset trace(Coset c, Word const& w) const {
        for (Letter a : w) {
            c = act(c, a);
        }
        return c;
    }

    // Raw entries, row-major over cosets with columns x1, x1^-1, x2, ...
    std::vector<Coset> const& entries() const noexcept { return entries_; }

    friend bool operator==(CosetTable const& a, CosetTable const& b) {
        return a.d_ == b.d_ && a.n_ == b.n_ && a.entries_ == b.entries_;
    }

  private:
    std::size_t d_;
    std::size_t n_;
    std::vector<Coset> entries_;
    EnumerationStats stats_;
};

// Enumeration aborted at the coset cap. This is inconclusive; it says
// nothing about whether G is infinite.
struct NonTermination {
    EnumerationStats stats;
};

using EnumerationResult = std::variant<CosetTable, NonTermination>;

// In-progress coset enumeration. Owned by a single thread.
class Enumerator {
  public:
    Enumerator(Presentation const& p, EnumerationLimits limits)
        : d_(p.generator_count()),
          cols_(2 * p.generator_count()),
          limits_(limits) {
        if (limits_.max_cosets < 1) {
            throw std::invalid_argument("max_cosets must be >= 1");
        }
        for (std::size_t i = 0; i < p.relator_count(); ++i) {
            Relator const& rel = p.relators[i];
            if (rel.exponent > detail::max_word_length / rel.base.size()) {
                throw std::invalid_argument("relator " + std::to_string(i + 1) +
                                            " is too long to enumerate");
            }
        }
        for (std::size_t i = 0; i < p.relator_count(); ++i) {
            std::vector<std::size_t> r;
            for (Letter a : p.full_relator(i)) {
                r.push_back(detail::column(a));
            }
            relators_.push_back(std::move(r));
        }
        // Distinct cyclic conjugates, grouped by first column, for Felsch
        // deduction processing.
        conjugates_.resize(cols_);
        for (std::size_t i = 0; i < p.relator_count(); ++i) {
            Word const& u = p.relators[i].base;
            std::set<Word> seen;
            for (std::size_t s = 0; s < u.size(); ++s) {
                std::vector<Letter> rot(u.begin() + static_cast<long>(s), u.end());
                rot.insert(rot.end(), u.begin(), u.begin() + static_cast<long>(s));
                Word full = power(Word(rot), p.relators[i].exponent);
                if (!seen.insert(full).second) {
                    continue;
                }
                std::vector<std::size_t> r;
                for (Letter a : full) {
                    r.push_back(detail::column(a));
                }
                conjugates_[r.front()].push_back(std::move(r));
            }
        }
        table_.assign(2 * cols_, 0);
        parent_ = {0, 1};
        defined_ = 1;
        live_ = 1;
        max_live_ = 1;
    }

    struct CapReached {};

    bool is_live(Coset c) const {
        return c >= 1 && c <= defined_ && parent_[c] == c;
    }

    Coset entry(Coset c, Letter a) const {
        return table_[c * cols_ + detail::column(a)];
    }

    std::size_t cosets_defined() const noexcept { return defined_; }
    std::size_t live_count() const noexcept { return live_; }

    // Defines a new coset c.a. Throws CapReached at the coset cap.
    Coset define(Coset c, Letter a) {
        return define_col(c, detail::column(a));
    }

    // Processes the coincidence a = b and every coincidence it induces.
    // The smaller coset number survives; dead rows are cleared.
    void merge(Coset a, Coset b) {
        std::vector<Coset> queue;
        unite(a, b, queue);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            Coset e = queue[qi];
            for (std::size_t x = 0; x < cols_; ++x) {
                Coset f = table_[e * cols_ + x];
                if (f == 0) {
                    continue;
                }
                std::size_t xi = x ^ 1U;
                if (table_[f * cols_ + xi] == e) {
                    table_[f * cols_ + xi] = 0;
                }
                Coset e1 = find(e);
                Coset f1 = find(f);
                Coset ex = table_[e1 * cols_ + x];
                Coset fxi = table_[f1 * cols_ + xi];
                if (ex != 0) {
                    unite(f1, ex, queue);
                } else if (fxi != 0) {
                    unite(e1, fxi, queue);
                } else {
                    set_entry(e1, x, f1);
                }
            }
            for (std::size_t x = 0; x < cols_; ++x) {
                table_[e * cols_ + x] = 0;
            }
        }
    }

    EnumerationResult run() {
        try {
            if (limits_.strategy == Strategy::hlt) {
                run_hlt();
            } else {
                run_felsch();
            }
        } catch (CapReached const&) {
            return NonTermination{stats()};
        }
        return table();
    }

    // The live cosets renumbered in order of first definition.
    CosetTable table() const {
        std::vector<Coset> renumber(defined_ + 1, 0);
        Coset next = 0;
        for (Coset c = 1; c <= defined_; ++c) {
            if (is_live(c)) {
                renumber[c] = ++next;
            }
        }
        std::vector<Coset> out;
        out.reserve(static_cast<std::size_t>(next) * cols_);
        for (Coset c = 1; c <= defined_; ++c) {
            if (!is_live(c)) {
                continue;
            }
            for (std::size_t x = 0; x < cols_; ++x) {
                Coset t = table_[c * cols_ + x];
                if (t == 0) {
                    throw std::logic_error("coset table is incomplete");
                }
                out.push_back(renumber[t]);
            }
        }
        return CosetTable(d_, next, std::move(out), stats());
    }

  private:
    EnumerationStats stats() const { return {defined_, max_live_}; }

    Coset find(Coset c) {
        Coset root = c;
        while (parent_[root] != root) {
            root = parent_[root];
        }
        while (parent_[c] != root) {
            Coset next = parent_[c];
            parent_[c] = root;
            c = next;
        }
        return root;
    }

    void unite(Coset a, Coset b, std::vector<Coset>& queue) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return;
        }
        if (a > b) {
            std::swap(a, b);
        }
        parent_[b] = a;
        --live_;
        queue.push_back(b);
    }

    void set_entry(Coset c, std::size_t x, Coset t) {
        table_[c * cols_ + x] = t;
        table_[t * cols_ + (x ^ 1U)] = c;
        if (limits_.strategy == Strategy::felsch) {
            deductions_.emplace_back(c, x);
        }
    }

    Coset define_col(Coset c, std::size_t x) {
        if (defined_ >= limits_.max_cosets) {
            throw CapReached{};
        }
        Coset fresh = static_cast<Coset>(++defined_);
        table_.resize((defined_ + 1) * cols_, 0);
        parent_.push_back(fresh);
        ++live_;
        max_live_ = std::max(max_live_, live_);
        set_entry(c, x, fresh);
        return fresh;
    }

    // Scans relator r from coset c. With fill set, gaps are closed by new
    // definitions; otherwise only deductions and coincidences are made.
    void scan(Coset c, std::vector<std::size_t> const& r, bool fill) {
        if (r.empty()) {
            return;
        }
        Coset f = c;
        Coset b = c;
        std::size_t i = 0;
        std::size_t j = r.size();  // r[i..j) is the unscanned part
        for (;;) {
            while (i < j && table_[f * cols_ + r[i]] != 0) {
                f = table_[f * cols_ + r[i]];
                ++i;
            }
            if (i == j) {
                if (f != c) {
                    merge(f, c);
                }
                return;
            }
            while (j > i && table_[b * cols_ + (r[j - 1] ^ 1U)] != 0) {
                b = table_[b * cols_ + (r[j - 1] ^ 1U)];
                --j;
            }
            if (j == i) {
                merge(f, b);
                return;
            }
            if (j == i + 1) {
                set_entry(f, r[i], b);
                return;
            }
            if (!fill) {
                return;
            }
            define_col(f, r[i]);
        }
    }

    void run_hlt() {
        for (Coset c = 1; c <= defined_; ++c) {
            for (auto const& r : relators_) {
                if (!is_live(c)) {
                    break;
                }
                scan(c, r, true);
            }
            if (!is_live(c)) {
                continue;
            }
            for (std::size_t x = 0; x < cols_; ++x) {
                if (table_[c * cols_ + x] == 0) {
                    define_col(c, x);
                }
            }
        }
    }

    void process_deductions() {
        while (!deductions_.empty()) {
            auto [c, x] = deductions_.back();
            deductions_.pop_back();
            if (!is_live(c)) {
                continue;
            }
            for (auto const& r : conjugates_[x]) {
                if (!is_live(c)) {
                    break;
                }
                scan(c, r, false);
            }
            if (!is_live(c) || table_[c * cols_ + x] == 0) {
                continue;
            }
            Coset t = table_[c * cols_ + x];
            for (auto const& r : conjugates_[x ^ 1U]) {
                if (!is_live(t)) {
                    break;
                }
                scan(t, r, false);
            }
        }
    }

    void run_felsch() {
        for (;;) {
            // Relators must hold at the identity coset before anything is
            // defined (covers relators that never get a deduction).
            for (auto const& r : relators_) {
                scan(1, r, false);
            }
            process_deductions();
            for (Coset c = 1; c <= defined_; ++c) {
                for (std::size_t x = 0; x < cols_; ++x) {
                    if (is_live(c) && table_[c * cols_ + x] == 0) {
                        define_col(c, x);
                        process_deductions();
                    }
                }
            }
            // Final check: every relator closes at every live coset.
            bool changed = false;
            for (Coset c = 1; c <= defined_; ++c) {
                for (auto const& r : relators_) {
                    if (!is_live(c)) {
                        break;
                    }
                    std::size_t before = live_;
                    scan(c, r, false);
                    changed = changed || live_ != before || !deductions_.empty();
                }
            }
            if (!changed && complete()) {
                deductions_.clear();
                return;
            }
        }
    }

    bool complete() const {
        for (Coset c = 1; c <= defined_; ++c) {
            if (!is_live(c)) {
                continue;
            }
            for (std::size_t x = 0; x < cols_; ++x) {
                if (table_[c * cols_ + x] == 0) {
                    return false;
                }
            }
        }
        return true;
    }

    std::size_t d_;
    std::size_t cols_;
    EnumerationLimits limits_;
    std::vector<std::vector<std::size_t>> relators_;
    std::vector<std::vector<std::vector<std::size_t>>> conjugates_;
    std::vector<Coset> table_;   // row 0 unused
    std::vector<Coset> parent_;  // union-find forest; live iff parent_[c] == c
    std::vector<std::pair<Coset, std::size_t>> deductions_;
    std::size_t defined_ = 0;
    std::size_t live_ = 0;
    std::size_t max_live_ = 0;
};

// Deterministic given (p, limits): cosets are defined in scan order,
// coincidences keep the smaller number, and live cosets are renumbered in
// order of first definition.
inline EnumerationResult enumerate(Presentation const& p,
                                   EnumerationLimits limits = {}) {
    return Enumerator(p, limits).run();
}

inline Coset trace(CosetTable const& t, Coset c, Word const& w) {
    return t.trace(c, w);
}

// Order of the element represented by w. The table is the regular
// representation, so the orbit of the identity coset under w has length
// equal to the order.
inline std::size_t element_order(CosetTable const& t, Word const& w) {
    Coset c = t.trace(1, w);
    std::size_t k = 1;
    while (c != 1) {
        c = t.trace(c, w);
        ++k;
    }
    return k;
}

// Action of a word on all cosets, as a 0-based permutation.
inline Permutation word_permutation(CosetTable const& t, Word const& w) {
    Permutation perm(t.size());
    for (Coset c = 1; c <= t.size(); ++c) {
        perm[c - 1] = t.trace(c, w) - 1;
    }
    return perm;
}

inline std::vector<Permutation> generator_permutations(CosetTable const& t) {
    std::vector<Permutation> out;
    for (std::size_t j = 1; j <= t.generator_count(); ++j) {
        out.push_back(word_permutation(t, Word{static_cast<Letter>(j)}));
    }
    return out;
}

// Renumbers cosets breadth-first from coset 1, scanning the columns
// x1, x1^-1, x2, x2^-1, ... of each coset in turn.
inline CosetTable standardize(CosetTable const& t) {
    std::size_t n = t.size();
    std::size_t cols = 2 * t.generator_count();
    std::vector<Coset> relabel(n + 1, 0);
    std::vector<Coset> order;
    order.reserve(n);
    relabel[1] = 1;
    order.push_back(1);
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
        Coset c = order[qi];
        for (std::size_t x = 0; x < cols; ++x) {
            Coset target = t.entries()[(c - 1) * cols + x];
            if (relabel[target] == 0) {
                order.push_back(target);
                relabel[target] = static_cast<Coset>(order.size());
            }
        }
    }
    if (order.size() != n) {
        throw std::logic_error("coset table is not transitive");
    }
    std::vector<Coset> out(n * cols);
    for (std::size_t k = 0; k < n; ++k) {
        Coset c = order[k];
        for (std::size_t x = 0; x < cols; ++x) {
            out[k * cols + x] = relabel[t.entries()[(c - 1) * cols + x]];
        }
    }
    return CosetTable(t.generator_count(), n, std::move(out), t.stats());
}

// True when every full relator closes at every coset and each generator
// column is inverse to its partner.
inline bool satisfies_relators(CosetTable const& t, Presentation const& p) {
    for (Coset c = 1; c <= t.size(); ++c) {
        for (std::size_t j = 1; j <= t.generator_count(); ++j) {
            Letter a = static_cast<Letter>(j);
            if (t.act(t.act(c, a), -a) != c) {
                return false;
            }
        }
        for (std::size_t i = 0; i < p.relator_count(); ++i) {
            if (t.trace(c, p.full_relator(i)) != c) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace orbicert
