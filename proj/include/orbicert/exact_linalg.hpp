#pragma once

// Exact integer linear algebra: ranks over Q and GF(2), Hermite and Smith
// normal forms, and orders of elements in Z^n / L. All arithmetic is on
// arbitrary-precision integers.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "orbicert/types.hpp"

namespace orbicert {

class SparseIntMatrix {
  public:
    using Row = std::map<std::size_t, Integer>;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols)
        : cols_(cols), data_(rows) {}

    template <typename T>
    static SparseIntMatrix from_rows(
        std::vector<std::vector<T>> const& rows, std::size_t cols) {
        SparseIntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) {
                throw std::invalid_argument("ragged row");
            }
            for (std::size_t j = 0; j < cols; ++j) {
                m.set(i, j, Integer(rows[i][j]));
            }
        }
        return m;
    }

    static SparseIntMatrix identity(std::size_t n) {
        SparseIntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.set(i, i, 1);
        }
        return m;
    }

    std::size_t rows() const noexcept { return data_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    Integer get(std::size_t r, std::size_t c) const {
        check(r, c);
        auto it = data_[r].find(c);
        return it == data_[r].end() ? Integer(0) : it->second;
    }

    void set(std::size_t r, std::size_t c, Integer v) {
        check(r, c);
        if (v == 0) {
            data_[r].erase(c);
        } else {
            data_[r][c] = std::move(v);
        }
    }

    void add(std::size_t r, std::size_t c, Integer const& v) {
        set(r, c, get(r, c) + v);
    }

    Row const& row(std::size_t r) const { return data_.at(r); }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (auto const& r : data_) {
            n += r.size();
        }
        return n;
    }

    bool is_zero() const { return nonzeros() == 0; }

    std::vector<std::vector<Integer>> to_dense() const {
        std::vector<std::vector<Integer>> out(rows(),
                                              std::vector<Integer>(cols_));
        for (std::size_t i = 0; i < rows(); ++i) {
            for (auto const& [j, v] : data_[i]) {
                out[i][j] = v;
            }
        }
        return out;
    }

    static SparseIntMatrix from_dense(
        std::vector<std::vector<Integer>> const& rows, std::size_t cols) {
        return from_rows(rows, cols);
    }

    friend bool operator==(SparseIntMatrix const&,
                           SparseIntMatrix const&) = default;

  private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows() || c >= cols_) {
            throw std::out_of_range("matrix index out of range");
        }
    }

    std::size_t cols_ = 0;
    std::vector<Row> data_;
};

inline SparseIntMatrix multiply(SparseIntMatrix const& a,
                                SparseIntMatrix const& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("dimension mismatch in multiply");
    }
    SparseIntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::map<std::size_t, Integer> acc;
        for (auto const& [k, av] : a.row(i)) {
            for (auto const& [j, bv] : b.row(k)) {
                acc[j] += av * bv;
            }
        }
        for (auto& [j, v] : acc) {
            out.set(i, j, std::move(v));
        }
    }
    return out;
}

namespace detail {

    struct ExtendedGcd {
        Integer g, s, t;  // g = s*a + t*b, g >= 0
    };

    inline ExtendedGcd extended_gcd(Integer a, Integer b) {
        Integer s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (b != 0) {
            Integer q = a / b;
            Integer r = a - q * b;
            a = b;
            b = r;
            Integer s2 = s0 - q * s1;
            s0 = s1;
            s1 = s2;
            Integer t2 = t0 - q * t1;
            t0 = t1;
            t1 = t2;
        }
        if (a < 0) {
            return {-a, -s0, -t0};
        }
        return {a, s0, t0};
    }

    inline Integer floor_div(Integer const& a, Integer const& b) {
        Integer q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) {
            --q;
        }
        return q;
    }

    using DenseRow = std::vector<Integer>;

    // row_a <- s*row_a + t*row_b ; row_b <- u*row_a + v*row_b
    inline void combine(DenseRow& ra, DenseRow& rb, Integer const& s,
                        Integer const& t, Integer const& u, Integer const& v) {
        for (std::size_t j = 0; j < ra.size(); ++j) {
            Integer a = ra[j];
            Integer b = rb[j];
            ra[j] = s * a + t * b;
            rb[j] = u * a + v * b;
        }
    }

}  // namespace detail

// Rank over Q by fraction-free sparse elimination. Each eliminated row is
// replaced by pivot*row - entry*pivot_row and divided by its content, so
// entries stay integral and small. Pivots are chosen by minimal Markowitz
// cost (row_len - 1)(col_len - 1), ties to the lowest (row, col).
inline std::size_t rank_rational(SparseIntMatrix const& m) {
    std::vector<SparseIntMatrix::Row> rows(m.rows());
    std::vector<std::set<std::size_t>> col_rows(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        rows[i] = m.row(i);
        for (auto const& [j, v] : rows[i]) {
            col_rows[j].insert(i);
        }
    }
    std::vector<bool> active(m.rows(), true);
    std::size_t rank = 0;
    for (;;) {
        std::size_t best_cost = std::numeric_limits<std::size_t>::max();
        std::size_t pr = 0;
        std::size_t pc = 0;
        for (std::size_t i = 0; i < rows.size() && best_cost > 0; ++i) {
            if (!active[i] || rows[i].empty()) {
                continue;
            }
            std::size_t row_cost = rows[i].size() - 1;
            for (auto const& [j, v] : rows[i]) {
                std::size_t cost = row_cost * (col_rows[j].size() - 1);
                if (cost < best_cost) {
                    best_cost = cost;
                    pr = i;
                    pc = j;
                    if (cost == 0) {
                        break;
                    }
                }
            }
        }
        if (best_cost == std::numeric_limits<std::size_t>::max()) {
            return rank;
        }
        ++rank;
        active[pr] = false;
        SparseIntMatrix::Row const pivot_row = rows[pr];
        Integer const pivot = pivot_row.at(pc);
        for (auto const& [j, v] : pivot_row) {
            col_rows[j].erase(pr);
        }
        std::vector<std::size_t> targets(col_rows[pc].begin(),
                                         col_rows[pc].end());
        for (std::size_t r : targets) {
            SparseIntMatrix::Row& row = rows[r];
            Integer const factor = row.at(pc);
            for (auto const& [j, v] : row) {
                col_rows[j].erase(r);
            }
            for (auto& [j, v] : row) {
                v *= pivot;
            }
            for (auto const& [j, v] : pivot_row) {
                row[j] -= factor * v;
            }
            Integer content = 0;
            for (auto it = row.begin(); it != row.end();) {
                if (it->second == 0) {
                    it = row.erase(it);
                } else {
                    content = gcd(content, it->second);
                    ++it;
                }
            }
            if (content > 1) {
                for (auto& [j, v] : row) {
                    v /= content;
                }
            }
            for (auto const& [j, v] : row) {
                col_rows[j].insert(r);
            }
        }
    }
}

// Rank of m with entries reduced mod 2.
inline std::size_t rank_gf2(SparseIntMatrix const& m) {
    std::size_t words = (m.cols() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<std::uint64_t> bits(words, 0);
        bool any = false;
        for (auto const& [j, v] : m.row(i)) {
            if ((v & 1) != 0) {
                bits[j / 64] |= std::uint64_t{1} << (j % 64);
                any = true;
            }
        }
        if (any) {
            rows.push_back(std::move(bits));
        }
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
        std::size_t w = c / 64;
        std::uint64_t mask = std::uint64_t{1} << (c % 64);
        std::size_t pivot = rank;
        while (pivot < rows.size() && (rows[pivot][w] & mask) == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i != rank && (rows[i][w] & mask) != 0) {
                for (std::size_t k = w; k < words; ++k) {
                    rows[i][k] ^= rows[rank][k];
                }
            }
        }
        ++rank;
    }
    return rank;
}

struct HermiteForm {
    // Nonzero rows of the row-style Hermite normal form: echelon, positive
    // pivots, entries above each pivot reduced into [0, pivot).
    SparseIntMatrix form;
    // Unimodular U (rows x rows of the input) with U * input equal to
    // `form` stacked on zero rows.
    SparseIntMatrix transform;
    std::vector<std::size_t> pivot_columns;
};

inline HermiteForm hermite_normal_form(SparseIntMatrix const& m) {
    using detail::DenseRow;
    std::size_t nr = m.rows();
    std::size_t nc = m.cols();
    std::vector<DenseRow> a = m.to_dense();
    std::vector<DenseRow> u = SparseIntMatrix::identity(nr).to_dense();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        for (std::size_t i = r + 1; i < nr; ++i) {
            if (a[i][c] == 0) {
                continue;
            }
            if (a[r][c] == 0) {
                std::swap(a[r], a[i]);
                std::swap(u[r], u[i]);
                continue;
            }
            auto [g, s, t] = detail::extended_gcd(a[r][c], a[i][c]);
            Integer x = a[r][c] / g;
            Integer y = a[i][c] / g;
            // [s t; -y x] has determinant s*x + t*y = 1.
            detail::combine(a[r], a[i], s, t, -y, x);
            detail::combine(u[r], u[i], s, t, -y, x);
        }
        if (a[r][c] == 0) {
            continue;
        }
        if (a[r][c] < 0) {
            for (auto& v : a[r]) v = -v;
            for (auto& v : u[r]) v = -v;
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = detail::floor_div(a[i][c], a[r][c]);
            if (q != 0) {
                for (std::size_t j = 0; j < nc; ++j) a[i][j] -= q * a[r][j];
                for (std::size_t j = 0; j < nr; ++j) u[i][j] -= q * u[r][j];
            }
        }
        pivots.push_back(c);
        ++r;
    }
    HermiteForm out;
    out.form = SparseIntMatrix::from_dense(
        std::vector<DenseRow>(a.begin(), a.begin() + static_cast<long>(r)), nc);
    out.transform = SparseIntMatrix::from_dense(u, nr);
    out.pivot_columns = std::move(pivots);
    return out;
}

// Diagonal d_1 | d_2 | ... of the Smith normal form, min(rows, cols) entries,
// with zeros for the rank deficiency.
inline std::vector<Integer> smith_normal_form(SparseIntMatrix const& m) {
    std::size_t nr = m.rows();
    std::size_t nc = m.cols();
    std::vector<detail::DenseRow> a = m.to_dense();
    std::vector<Integer> diag;
    std::size_t t = 0;
    while (t < nr && t < nc) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < nr; ++i) {
            for (std::size_t j = t; j < nc; ++j) {
                if (a[i][j] != 0 &&
                    (!best || abs(a[i][j]) < abs(a[best->first][best->second]))) {
                    best = {i, j};
                }
            }
        }
        if (!best) {
            break;
        }
        std::swap(a[t], a[best->first]);
        for (auto& row : a) {
            std::swap(row[t], row[best->second]);
        }
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (a[i][t] == 0) continue;
                Integer q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < nc; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (a[t][j] == 0) continue;
                Integer q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < nr; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (auto& row : a) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
        }
        diag.push_back(abs(a[t][t]));
        ++t;
    }
    // diag(a, b) is equivalent to diag(gcd, lcm); this pass yields a chain.
    for (std::size_t i = 0; i < diag.size(); ++i) {
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            Integer g = gcd(diag[i], diag[j]);
            Integer l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag.resize(std::min(nr, nc), Integer(0));
    return diag;
}

// Order of v in Z^cols / L where L is spanned by the rows of `lattice`;
// std::nullopt when v has infinite order.
inline std::optional<Integer> order_in_quotient(SparseIntMatrix const& lattice,
                                                std::vector<Integer> const& v) {
    if (v.size() != lattice.cols()) {
        throw std::invalid_argument("vector length does not match lattice");
    }
    HermiteForm h = hermite_normal_form(lattice);
    // Solve c * H = v over Q using the echelon pivots.
    std::vector<Rational> residual(v.begin(), v.end());
    Integer k = 1;
    for (std::size_t r = 0; r < h.pivot_columns.size(); ++r) {
        std::size_t pc = h.pivot_columns[r];
        Rational coeff = residual[pc] / Rational(h.form.get(r, pc));
        if (coeff != 0) {
            for (auto const& [j, hv] : h.form.row(r)) {
                residual[j] -= coeff * Rational(hv);
            }
            Integer den = denominator(coeff);
            k = k / gcd(k, den) * den;
        }
    }
    for (auto const& q : residual) {
        if (q != 0) {
            return std::nullopt;
        }
    }
    return k;
}

inline std::optional<Integer> order_in_quotient(
    SparseIntMatrix const& lattice, std::vector<std::int64_t> const& v) {
    return order_in_quotient(lattice, std::vector<Integer>(v.begin(), v.end()));
}

}  // namespace orbicert
