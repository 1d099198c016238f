#pragma once

// Verification of the relator-order hypothesis (each u_i has order exactly
// m_i in G) and the certificates that follow from it via
// chi_orb = 1 - d + sum 1/m_i.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "orbicert/coset_enum.hpp"
#include "orbicert/exact_linalg.hpp"
#include "orbicert/orbicomplex.hpp"
#include "orbicert/presentation.hpp"
#include "orbicert/types.hpp"

namespace orbicert {

class InvalidWitness : public Error {
  public:
    using Error::Error;
};

enum class OrderStatus { verified, refuted, inconclusive };
enum class OrderMethod { coset_table, witness, abelianization };

inline std::string to_string(OrderStatus s) {
    switch (s) {
        case OrderStatus::verified: return "VERIFIED";
        case OrderStatus::refuted: return "REFUTED";
        case OrderStatus::inconclusive: return "INCONCLUSIVE";
    }
    return "";
}

inline std::string to_string(OrderMethod m) {
    switch (m) {
        case OrderMethod::coset_table: return "COSET_TABLE";
        case OrderMethod::witness: return "WITNESS";
        case OrderMethod::abelianization: return "ABELIANIZATION";
    }
    return "";
}

// What one route found for one relator. `order` is the order of u_i in G
// (coset table) or in a quotient of G (witness, abelianization); nullopt
// means infinite order in the abelianization.
struct RouteOutcome {
    OrderMethod method;
    OrderStatus status;
    std::optional<Integer> order;
};

struct OrderVerdict {
    std::size_t relator = 0;
    std::uint64_t claimed = 1;
    OrderStatus status = OrderStatus::inconclusive;
    std::optional<OrderMethod> method;  // route that decided the status
    std::optional<Integer> actual;      // order in G when REFUTED
    std::vector<RouteOutcome> routes;
    bool routes_agree = true;
};

// A finite permutation quotient of G given by images of the generators.
struct WitnessQuotient {
    std::size_t degree = 0;
    std::vector<Permutation> images;  // one per generator, 0-based points
};

namespace detail {

    inline Permutation inverse(Permutation const& p) {
        Permutation inv(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            inv[p[i]] = static_cast<std::uint32_t>(i);
        }
        return inv;
    }

    inline Integer permutation_order(Permutation const& p) {
        std::vector<bool> seen(p.size(), false);
        Integer order = 1;
        for (std::size_t s = 0; s < p.size(); ++s) {
            if (seen[s]) {
                continue;
            }
            std::size_t len = 0;
            for (std::size_t c = s; !seen[c]; c = p[c]) {
                seen[c] = true;
                ++len;
            }
            order = order / gcd(order, Integer(len)) * len;
        }
        return order;
    }

}  // namespace detail

// Image of w under the witness; letters act on the right, left to right.
inline Permutation evaluate(WitnessQuotient const& w, Word const& word) {
    std::vector<Permutation> inverses;
    for (auto const& img : w.images) {
        inverses.push_back(detail::inverse(img));
    }
    Permutation out(w.degree);
    std::iota(out.begin(), out.end(), 0U);
    for (auto& point : out) {
        for (Letter a : word) {
            std::size_t j = static_cast<std::size_t>(std::abs(a)) - 1;
            point = a > 0 ? w.images[j][point] : inverses[j][point];
        }
    }
    return out;
}

// Throws InvalidWitness unless every full relator u_i^{m_i} maps to the
// identity, i.e. the witness really is a quotient of G.
inline void validate_witness(WitnessQuotient const& w, Presentation const& p) {
    if (w.images.size() != p.generator_count()) {
        throw InvalidWitness("witness has " + std::to_string(w.images.size()) +
                             " generator images, expected " +
                             std::to_string(p.generator_count()));
    }
    for (auto const& img : w.images) {
        if (img.size() != w.degree) {
            throw InvalidWitness("witness image has wrong degree");
        }
    }
    for (std::size_t i = 0; i < p.relator_count(); ++i) {
        Permutation img = evaluate(w, p.full_relator(i));
        for (std::size_t k = 0; k < img.size(); ++k) {
            if (img[k] != k) {
                throw InvalidWitness("relator " + std::to_string(i + 1) + " (" +
                                     to_string(p.relators[i], p.generator_names) +
                                     ") is not the identity in the witness");
            }
        }
    }
}

// Witness file: a line "degree N", then "name: (1 2)(3 4)" per generator
// with 1-based points; "()" is the identity. Generators not listed map to
// the identity. Lines starting with '#' are comments. Throws ParseError on
// malformed text and InvalidWitness if the result is not a quotient of G.
inline WitnessQuotient parse_witness(std::string_view text,
                                     Presentation const& p) {
    WitnessQuotient w;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool have_degree = false;
    std::vector<bool> assigned(p.generator_count(), false);
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!have_degree) {
            std::istringstream ls(line);
            std::string kw;
            long long n = 0;
            if (!(ls >> kw >> n) || kw != "degree" || n < 1 || !(ls >> std::ws).eof()) {
                throw ParseError("expected 'degree N'", lineno, 1);
            }
            w.degree = static_cast<std::size_t>(n);
            have_degree = true;
            for (std::size_t j = 0; j < p.generator_count(); ++j) {
                Permutation id(w.degree);
                std::iota(id.begin(), id.end(), 0U);
                w.images.push_back(std::move(id));
            }
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw ParseError("expected 'name: cycles'", lineno, 1);
        }
        std::string name = trim(line.substr(0, colon));
        auto it = std::find(p.generator_names.begin(), p.generator_names.end(), name);
        if (it == p.generator_names.end()) {
            throw ParseError("unknown generator '" + name + "'", lineno, 1);
        }
        std::size_t j = static_cast<std::size_t>(it - p.generator_names.begin());
        if (assigned[j]) {
            throw ParseError("generator '" + name + "' assigned twice", lineno, 1);
        }
        assigned[j] = true;
        Permutation& img = w.images[j];
        std::vector<bool> used(w.degree, false);
        std::string body = line.substr(colon + 1);
        std::size_t pos = 0;
        auto skip = [&] {
            while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
        };
        auto col = [&] { return colon + 2 + pos; };
        skip();
        while (pos < body.size()) {
            if (body[pos] != '(') {
                throw ParseError("expected '('", lineno, col());
            }
            ++pos;
            std::vector<std::size_t> cycle;
            for (;;) {
                skip();
                if (pos < body.size() && body[pos] == ')') {
                    ++pos;
                    break;
                }
                if (pos >= body.size() || !std::isdigit(static_cast<unsigned char>(body[pos]))) {
                    throw ParseError("expected point or ')'", lineno, col());
                }
                std::size_t point = 0;
                while (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos]))) {
                    point = point * 10 + static_cast<std::size_t>(body[pos] - '0');
                    if (point > w.degree) {
                        break;
                    }
                    ++pos;
                }
                if (point < 1 || point > w.degree) {
                    throw ParseError("point out of range 1.." + std::to_string(w.degree),
                                     lineno, col());
                }
                if (used[point - 1]) {
                    throw ParseError("point " + std::to_string(point) +
                                         " repeated; cycles must be disjoint",
                                     lineno, col());
                }
                used[point - 1] = true;
                cycle.push_back(point - 1);
                skip();
                if (pos < body.size() && body[pos] == ',') ++pos;
            }
            for (std::size_t k = 0; k < cycle.size(); ++k) {
                img[cycle[k]] = static_cast<std::uint32_t>(cycle[(k + 1) % cycle.size()]);
            }
            skip();
        }
    }
    if (!have_degree) {
        throw ParseError("missing 'degree N' line", lineno + 1, 1);
    }
    validate_witness(w, p);
    return w;
}

// Lattice of relations of the abelianization: rows m_j * ab(u_j).
inline SparseIntMatrix abelianization_lattice(Presentation const& p) {
    std::size_t d = p.generator_count();
    SparseIntMatrix m(p.relator_count(), d);
    for (std::size_t i = 0; i < p.relator_count(); ++i) {
        auto v = abelianize(p.relators[i].base, d);
        for (std::size_t j = 0; j < d; ++j) {
            m.set(i, j, Integer(v[j]) * Integer(p.relators[i].exponent));
        }
    }
    return m;
}

// Tries COSET_TABLE, then WITNESS, then ABELIANIZATION; the first
// conclusive route decides. The coset table can verify or refute; the
// quotient routes only verify, since an order in a quotient divides the
// order in G. All route outcomes are recorded.
inline std::vector<OrderVerdict> verify_orders(Presentation const& p,
                                               CosetTable const* table,
                                               WitnessQuotient const* witness) {
    if (witness != nullptr) {
        validate_witness(*witness, p);
    }
    SparseIntMatrix lattice = abelianization_lattice(p);
    std::vector<OrderVerdict> out;
    for (std::size_t i = 0; i < p.relator_count(); ++i) {
        Relator const& rel = p.relators[i];
        Integer claimed(rel.exponent);
        OrderVerdict v;
        v.relator = i;
        v.claimed = rel.exponent;
        std::optional<Integer> exact;
        if (table != nullptr) {
            Integer k(element_order(*table, rel.base));
            exact = k;
            v.routes.push_back({OrderMethod::coset_table,
                                k == claimed ? OrderStatus::verified : OrderStatus::refuted,
                                k});
        }
        if (witness != nullptr) {
            Integer k = detail::permutation_order(evaluate(*witness, rel.base));
            v.routes.push_back({OrderMethod::witness,
                                k == claimed ? OrderStatus::verified
                                             : OrderStatus::inconclusive,
                                k});
        }
        {
            auto k = order_in_quotient(lattice, abelianize(rel.base, p.generator_count()));
            v.routes.push_back({OrderMethod::abelianization,
                                k && *k == claimed ? OrderStatus::verified
                                                   : OrderStatus::inconclusive,
                                k});
        }
        for (auto const& route : v.routes) {
            if (route.status != OrderStatus::inconclusive) {
                v.status = route.status;
                v.method = route.method;
                if (route.status == OrderStatus::refuted) {
                    v.actual = route.order;
                }
                break;
            }
        }
        // Quotient orders divide the order in G, which divides m_i.
        for (auto const& route : v.routes) {
            if (!route.order || claimed % *route.order != 0) {
                v.routes_agree = false;
            } else if (exact && *exact % *route.order != 0) {
                v.routes_agree = false;
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

enum class ConclusionKind {
    finite_bound_ok,
    infinite,
    not_kazhdan_t,
    no_infinite_amenable_normal,
    betti1_lower_bound,
    hypothesis_unverified,
    violation,
};

inline std::string to_string(ConclusionKind k) {
    switch (k) {
        case ConclusionKind::finite_bound_ok: return "FINITE_BOUND_OK";
        case ConclusionKind::infinite: return "INFINITE";
        case ConclusionKind::not_kazhdan_t: return "NOT_KAZHDAN_T";
        case ConclusionKind::no_infinite_amenable_normal: return "NO_INFINITE_AMENABLE_NORMAL";
        case ConclusionKind::betti1_lower_bound: return "BETTI1_LOWER_BOUND";
        case ConclusionKind::hypothesis_unverified: return "HYPOTHESIS_UNVERIFIED";
        case ConclusionKind::violation: return "VIOLATION";
    }
    return "";
}

struct Conclusion {
    ConclusionKind kind;
    // BETTI1_LOWER_BOUND: the bound. FINITE_BOUND_OK: ceil(1 / chi_orb).
    std::optional<Rational> value;
    std::optional<Integer> order;  // FINITE_BOUND_OK: |G|
    std::string detail;            // VIOLATION
};

struct AbelianInvariants {
    // Smith diagonal of the relation lattice padded to d entries; Z^d / L is
    // the direct sum of Z/d_k, with 0 standing for Z.
    std::vector<Integer> smith_diagonal;
    std::size_t free_rank = 0;
    bool infinite() const { return free_rank > 0; }
};

inline AbelianInvariants abelian_invariants(Presentation const& p) {
    AbelianInvariants a;
    a.smith_diagonal = smith_normal_form(abelianization_lattice(p));
    a.smith_diagonal.resize(p.generator_count(), Integer(0));
    a.free_rank = static_cast<std::size_t>(
        std::count(a.smith_diagonal.begin(), a.smith_diagonal.end(), Integer(0)));
    return a;
}

struct Certificate {
    std::string presentation;
    std::size_t d = 0;
    std::size_t r = 0;
    Rational sum_inv_m;
    Rational chi_orb;
    std::vector<OrderVerdict> order_verdicts;
    std::optional<Integer> group_size;  // nullopt: unknown
    std::vector<Conclusion> conclusions;
    std::optional<EulerReport> euler;
    // Independent cross-check, not a consequence of chi_orb: an infinite
    // abelianization forces G to be infinite.
    AbelianInvariants abelianization;
    std::vector<std::string> warnings;

    bool has(ConclusionKind k) const {
        return std::any_of(conclusions.begin(), conclusions.end(),
                           [k](Conclusion const& c) { return c.kind == k; });
    }
};

// max(0, 1/|G| - chi_orb), with 1/|G| = 0 for unknown or infinite G.
inline Rational l2_betti1_lower_bound(Presentation const& p,
                                      std::optional<Integer> const& size) {
    Rational inv_order = size ? Rational(1, *size) : Rational(0);
    Rational bound = inv_order - chi_orb(p);
    return bound > 0 ? bound : Rational(0);
}

inline Certificate apply_theorems(Presentation const& p,
                                  std::vector<OrderVerdict> const& verdicts,
                                  std::optional<Integer> const& size) {
    Certificate c;
    c.presentation = to_string(p);
    c.d = p.generator_count();
    c.r = p.relator_count();
    for (auto const& rel : p.relators) {
        c.sum_inv_m += Rational(1, Integer(rel.exponent));
    }
    c.chi_orb = chi_orb(p);
    c.order_verdicts = verdicts;
    c.group_size = size;
    c.abelianization = abelian_invariants(p);
    c.warnings = presentation_warnings(p);

    bool all_verified = verdicts.size() == p.relator_count();
    for (auto const& v : verdicts) {
        all_verified = all_verified && v.status == OrderStatus::verified;
        if (!v.routes_agree) {
            c.conclusions.push_back({ConclusionKind::violation, {}, {},
                                     "order routes disagree for relator " +
                                         std::to_string(v.relator + 1)});
        }
    }
    if (!all_verified) {
        c.conclusions.insert(c.conclusions.begin(),
                             {ConclusionKind::hypothesis_unverified, {}, {}, {}});
        return c;
    }

    Rational const& chi = c.chi_orb;
    if (chi <= 0) {
        c.conclusions.push_back({ConclusionKind::infinite, {}, {}, {}});
        if (chi < 0) {
            c.conclusions.push_back({ConclusionKind::not_kazhdan_t, {}, {}, {}});
            c.conclusions.push_back(
                {ConclusionKind::no_infinite_amenable_normal, {}, {}, {}});
            c.conclusions.push_back({ConclusionKind::betti1_lower_bound,
                                     l2_betti1_lower_bound(p, std::nullopt), {}, {}});
        }
    }
    if (size) {
        Rational n(*size);
        if (chi > 0 && n * chi >= 1) {
            c.conclusions.push_back({ConclusionKind::finite_bound_ok,
                                     Rational(ceil(1 / chi)), *size, {}});
            if (Rational(1, *size) - chi > 0) {
                c.conclusions.push_back({ConclusionKind::violation, {}, {},
                                         "1/|G| exceeds chi_orb"});
            }
        } else {
            c.conclusions.push_back(
                {ConclusionKind::violation, {}, {},
                 "finite group of order " + size->str() +
                     " with chi_orb = " + to_string(chi) +
                     " breaks |G| >= 1/chi_orb > 0"});
        }
    }
    return c;
}

}  // namespace orbicert
