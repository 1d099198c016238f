#pragma once

// The orbihedral universal cover X of the presentation 2-complex of a finite
// group G: the Cayley graph as 1-skeleton, plus one disc per cycle of the
// permutation of each relator base word u_i on G. The m_i stacked discs of
// the topological cover glued along the same loop are collapsed to that
// single disc, whose stabilizer is <u_i> of order m_i.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <iterator>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbicert/coset_enum.hpp"
#include "orbicert/exact_linalg.hpp"
#include "orbicert/presentation.hpp"
#include "orbicert/types.hpp"

namespace orbicert {

// The relator u_i does not have order m_i in G.
class OrderMismatch : public Error {
  public:
    OrderMismatch(std::size_t relator, std::uint64_t claimed,
                  std::size_t cycle_length)
        : Error("relator " + std::to_string(relator + 1) + " has order " +
                std::to_string(cycle_length) + " in G, not the declared " +
                std::to_string(claimed)),
          relator_(relator),
          claimed_(claimed),
          actual_(cycle_length) {}

    std::size_t relator() const noexcept { return relator_; }
    std::uint64_t claimed() const noexcept { return claimed_; }
    std::size_t actual() const noexcept { return actual_; }

  private:
    std::size_t relator_;
    std::uint64_t claimed_;
    std::size_t actual_;
};

class ComplexTooLarge : public Error {
  public:
    using Error::Error;
};

struct CayleyEdge {
    Coset source;
    std::size_t generator;  // 1-based
    Coset target;
};

struct CayleyGraph {
    std::size_t vertex_count = 0;
    std::size_t generator_count = 0;
    // Edge (c, j) sits at index (c - 1) * d + (j - 1).
    std::vector<CayleyEdge> edges;

    std::size_t edge_index(Coset c, std::size_t j) const {
        return (c - 1) * generator_count + (j - 1);
    }
};

struct Face {
    std::size_t relator = 0;  // 0-based relator index
    Coset base = 0;           // smallest coset in the <u_i>-orbit
    std::vector<Coset> orbit;
    std::map<std::size_t, Integer> boundary;  // edge index -> coefficient
};

struct TwoComplex {
    CayleyGraph graph;
    std::vector<Face> faces;
    SparseIntMatrix boundary1;  // vertices x edges
    SparseIntMatrix boundary2;  // edges x faces

    std::size_t cell_count() const {
        return graph.vertex_count + graph.edges.size() + faces.size();
    }
};

struct BettiNumbers {
    std::size_t b0 = 0;
    std::size_t b1 = 0;
    std::size_t b2 = 0;

    friend bool operator==(BettiNumbers const&, BettiNumbers const&) = default;
};

struct EulerReport {
    BettiNumbers betti;
    std::size_t group_order = 0;
    Rational chi_orb;
    Rational lhs;  // (b0 - b1 + b2) / |G|
    bool identity_holds = false;
    Integer b2_predicted;  // |G| * chi_orb - 1
    bool b1_vanishes = false;
    bool b2_matches = false;
    std::size_t cycle_space_dim = 0;
};

inline constexpr std::size_t default_max_cells = 200'000;

inline CayleyGraph build_cayley_graph(CosetTable const& t,
                                      Presentation const& p) {
    if (t.generator_count() != p.generator_count()) {
        throw std::invalid_argument("coset table does not match presentation");
    }
    CayleyGraph g;
    g.vertex_count = t.size();
    g.generator_count = t.generator_count();
    g.edges.reserve(t.size() * t.generator_count());
    for (Coset c = 1; c <= t.size(); ++c) {
        for (std::size_t j = 1; j <= g.generator_count; ++j) {
            g.edges.push_back({c, j, t.act(c, static_cast<Letter>(j))});
        }
    }
    return g;
}

// Vertex-by-edge boundary map: edge (c, j) -> target - source.
inline SparseIntMatrix incidence_matrix(CayleyGraph const& g) {
    SparseIntMatrix m(g.vertex_count, g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        m.add(g.edges[e].target - 1, e, 1);
        m.add(g.edges[e].source - 1, e, -1);
    }
    return m;
}

namespace detail {

    // Signed edge-traversal count of the path reading w from c.
    inline std::map<std::size_t, Integer> trace_chain(CosetTable const& t,
                                                      CayleyGraph const& g,
                                                      Coset c, Word const& w) {
        std::map<std::size_t, Integer> chain;
        for (Letter a : w) {
            std::size_t j = static_cast<std::size_t>(std::abs(a));
            if (a > 0) {
                chain[g.edge_index(c, j)] += 1;
                c = t.act(c, a);
            } else {
                c = t.act(c, a);
                chain[g.edge_index(c, j)] -= 1;
            }
        }
        for (auto it = chain.begin(); it != chain.end();) {
            it = it->second == 0 ? chain.erase(it) : std::next(it);
        }
        return chain;
    }

}  // namespace detail

// One face per cycle of u_i acting on G; each cycle must have length m_i.
// Throws OrderMismatch when a relator's order differs from its exponent, and
// ComplexTooLarge above max_cells total cells.
inline TwoComplex build_orbihedral_cover(CosetTable const& t,
                                         Presentation const& p,
                                         std::size_t max_cells = default_max_cells) {
    TwoComplex x;
    x.graph = build_cayley_graph(t, p);
    std::size_t n = t.size();
    std::size_t cells = n + x.graph.edges.size();
    for (std::size_t i = 0; i < p.relator_count(); ++i) {
        if (p.relators[i].exponent <= n && n % p.relators[i].exponent == 0) {
            cells += n / p.relators[i].exponent;
        }
    }
    if (cells > max_cells) {
        throw ComplexTooLarge("complex would have " + std::to_string(cells) +
                              " cells, above the limit of " +
                              std::to_string(max_cells));
    }
    for (std::size_t i = 0; i < p.relator_count(); ++i) {
        Relator const& rel = p.relators[i];
        Permutation perm = word_permutation(t, rel.base);
        Word full = p.full_relator(i);
        std::vector<bool> seen(n, false);
        for (std::size_t start = 0; start < n; ++start) {
            if (seen[start]) {
                continue;
            }
            Face f;
            f.relator = i;
            f.base = static_cast<Coset>(start + 1);
            for (std::size_t c = start; !seen[c]; c = perm[c]) {
                seen[c] = true;
                f.orbit.push_back(static_cast<Coset>(c + 1));
            }
            if (f.orbit.size() != rel.exponent) {
                throw OrderMismatch(i, rel.exponent, f.orbit.size());
            }
            f.boundary = detail::trace_chain(t, x.graph, f.base, full);
            x.faces.push_back(std::move(f));
        }
    }
    x.boundary1 = incidence_matrix(x.graph);
    x.boundary2 = SparseIntMatrix(x.graph.edges.size(), x.faces.size());
    for (std::size_t k = 0; k < x.faces.size(); ++k) {
        for (auto const& [e, v] : x.faces[k].boundary) {
            x.boundary2.set(e, k, v);
        }
    }
    if (!multiply(x.boundary1, x.boundary2).is_zero()) {
        throw std::logic_error("boundary maps do not compose to zero");
    }
    return x;
}

inline BettiNumbers betti_numbers(TwoComplex const& x) {
    std::size_t r1 = rank_rational(x.boundary1);
    std::size_t r2 = rank_rational(x.boundary2);
    std::size_t v = x.graph.vertex_count;
    std::size_t e = x.graph.edges.size();
    return {v - r1, e - r1 - r2, x.faces.size() - r2};
}

// Dimension of the GF(2) cycle space computed by elimination.
inline std::size_t cycle_space_dim_gf2(CayleyGraph const& g) {
    return g.edges.size() - rank_gf2(incidence_matrix(g));
}

// E - V + 1 for a connected graph, checked against the GF(2) kernel.
inline std::size_t cycle_space_dim(CayleyGraph const& g) {
    std::size_t formula = g.edges.size() + 1 - g.vertex_count;
    if (formula != cycle_space_dim_gf2(g)) {
        throw std::logic_error("cycle space dimension disagrees with E - V + 1");
    }
    return formula;
}

// Builds X, computes exact Betti numbers and compares their normalized
// alternating sum with chi_orb = 1 - d + sum 1/m_i. For finite G the l2
// Betti numbers are the ordinary ones divided by |G|, beta_1(G) = 0 and
// beta_0 = 1/|G|, so b2 must equal |G| chi_orb - 1.
inline EulerReport euler_identity_check(Presentation const& p,
                                        CosetTable const& t,
                                        std::size_t max_cells = default_max_cells) {
    TwoComplex x = build_orbihedral_cover(t, p, max_cells);
    EulerReport r;
    r.betti = betti_numbers(x);
    r.group_order = t.size();
    r.chi_orb = chi_orb(p);
    Integer n = t.size();
    r.lhs = Rational(Integer(r.betti.b0) - Integer(r.betti.b1) + Integer(r.betti.b2), n);
    r.identity_holds = r.lhs == r.chi_orb;
    Rational predicted = Rational(n) * r.chi_orb - 1;
    r.b2_predicted = numerator(predicted) / denominator(predicted);
    r.b1_vanishes = r.betti.b1 == 0;
    r.b2_matches = denominator(predicted) == 1 && r.b2_predicted == r.betti.b2;
    r.cycle_space_dim = cycle_space_dim(x.graph);
    return r;
}

}  // namespace orbicert
