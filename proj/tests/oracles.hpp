#pragma once

// Test-only reference computations. None of these share code with the
// library paths they check: group orders come from brute-force closure of
// explicit permutation groups, ranks from dense rational elimination or
// span enumeration, Smith forms from determinantal divisors, lattice
// membership in the plane by Cramer's rule.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Perm = std::vector<int>;

// Right action: (p * q)(i) = q[p[i]], i.e. apply p first.
inline Perm compose(Perm const& p, Perm const& q) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        r[i] = q[static_cast<std::size_t>(p[i])];
    }
    return r;
}

inline Perm identity(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline int order(Perm const& p) {
    Perm e = identity(p.size());
    Perm c = p;
    int k = 1;
    while (c != e) {
        c = compose(c, p);
        ++k;
    }
    return k;
}

inline Perm power(Perm const& p, int k) {
    Perm r = identity(p.size());
    for (int i = 0; i < k; ++i) {
        r = compose(r, p);
    }
    return r;
}

// Size of the group generated by gens, by breadth-first closure.
inline std::size_t closure_size(std::vector<Perm> const& gens) {
    std::set<Perm> seen{identity(gens.front().size())};
    std::vector<Perm> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (auto const& g : frontier) {
            for (auto const& s : gens) {
                Perm h = compose(g, s);
                if (seen.insert(h).second) {
                    next.push_back(h);
                }
            }
        }
        frontier = std::move(next);
    }
    return seen.size();
}

// Two reflections of the regular n-gon whose product is a rotation by
// 2*pi/n: s(i) = -i, t(i) = 1 - i (mod n).
inline std::pair<Perm, Perm> ngon_reflections(int n) {
    Perm s(static_cast<std::size_t>(n));
    Perm t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        s[static_cast<std::size_t>(i)] = (n - i) % n;
        t[static_cast<std::size_t>(i)] = ((1 - i) % n + n) % n;
    }
    return {s, t};
}

// Searches all pairs (x, y) in S_degree with ord(x) = a, ord(y) = b,
// ord(xy) = c and returns the largest group they generate (0 if none).
inline std::size_t largest_triangle_quotient(int a, int b, int c, int degree) {
    std::vector<Perm> all;
    Perm p = identity(static_cast<std::size_t>(degree));
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<Perm> xs;
    std::vector<Perm> ys;
    for (auto const& q : all) {
        int o = order(q);
        if (o == a) xs.push_back(q);
        if (o == b) ys.push_back(q);
    }
    std::size_t best = 0;
    for (auto const& x : xs) {
        for (auto const& y : ys) {
            if (order(compose(x, y)) == c) {
                best = std::max(best, closure_size({x, y}));
            }
        }
    }
    return best;
}

using Dense = std::vector<std::vector<Integer>>;

// Rank over Q by textbook Gaussian elimination on rationals.
inline std::size_t rank_q(Dense const& m) {
    if (m.empty()) return 0;
    std::vector<std::vector<Rational>> a;
    for (auto const& row : m) {
        a.emplace_back(row.begin(), row.end());
    }
    std::size_t rank = 0;
    std::size_t cols = a.front().size();
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[rank], a[piv]);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == rank || a[i][c] == 0) continue;
            Rational f = a[i][c] / a[rank][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Rank over GF(2) as log2 of the size of the row span (rows <= ~16).
inline std::size_t rank_gf2_by_span(Dense const& m) {
    std::set<std::vector<int>> span;
    std::size_t rows = m.size();
    std::size_t cols = rows ? m.front().size() : 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rows); ++mask) {
        std::vector<int> v(cols, 0);
        for (std::size_t i = 0; i < rows; ++i) {
            if ((mask >> i) & 1U) {
                for (std::size_t j = 0; j < cols; ++j) {
                    v[j] ^= static_cast<int>(m[i][j] & 1);
                }
            }
        }
        span.insert(v);
    }
    std::size_t r = 0;
    while ((std::size_t{1} << r) < span.size()) ++r;
    return r;
}

inline Integer det(Dense a) {
    std::size_t n = a.size();
    std::vector<std::vector<Rational>> m;
    for (auto const& row : a) m.emplace_back(row.begin(), row.end());
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return boost::multiprecision::numerator(d);
}

inline void subsets(std::size_t n, std::size_t k,
                    std::function<void(std::vector<std::size_t> const&)> const& f) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > n) return;
    for (;;) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Smith diagonal from determinantal divisors: d_k = D_k / D_{k-1} where D_k
// is the gcd of all k x k minors (0 once all minors vanish).
inline std::vector<Integer> smith_by_minors(Dense const& m, std::size_t cols) {
    std::size_t rows = m.size();
    std::size_t n = std::min(rows, cols);
    std::vector<Integer> out;
    Integer prev = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Integer g = 0;
        subsets(rows, k, [&](auto const& rs) {
            subsets(cols, k, [&](auto const& cs) {
                Dense sub(k, std::vector<Integer>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[rs[i]][cs[j]];
                g = gcd(g, det(sub));
            });
        });
        if (g == 0) {
            out.resize(n, Integer(0));
            return out;
        }
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

// Membership in the lattice spanned by at most two rows of Z^2, exactly:
// Cramer's rule when the rows are independent, otherwise a rank-1 lattice
// g * p * Z along a primitive direction p.
inline bool in_plane_lattice(Dense const& m, std::vector<Integer> const& w) {
    Dense rows;
    for (auto const& r : m) {
        if (r[0] != 0 || r[1] != 0) rows.push_back(r);
    }
    if (rows.empty()) return w[0] == 0 && w[1] == 0;
    if (rows.size() == 2) {
        Integer d = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
        if (d != 0) {
            // c0 * r0 + c1 * r1 = w
            Integer n0 = w[0] * rows[1][1] - w[1] * rows[1][0];
            Integer n1 = rows[0][0] * w[1] - rows[0][1] * w[0];
            return n0 % d == 0 && n1 % d == 0;
        }
    }
    Integer content = gcd(rows[0][0], rows[0][1]);
    std::vector<Integer> p{rows[0][0] / content, rows[0][1] / content};
    Integer g = 0;
    for (auto const& r : rows) {
        Integer a = p[0] != 0 ? r[0] / p[0] : r[1] / p[1];
        g = gcd(g, a);
    }
    // w must be t * p with g | t
    if (w[0] * p[1] != w[1] * p[0]) return false;
    Integer t = p[0] != 0 ? w[0] / p[0] : w[1] / p[1];
    return t % g == 0;
}

}  // namespace oracle
