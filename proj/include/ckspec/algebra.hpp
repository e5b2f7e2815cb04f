#pragma once

#include "ckspec/graph.hpp"
#include "ckspec/kgraph.hpp"

#include <map>
#include <string>
#include <vector>

namespace ckspec {

// Generator key S_mu S_nu^* with r(mu) == r(nu). Vertices are length-0 paths.
struct Key {
    Path mu;
    Path nu;
    auto operator<=>(const Key&) const = default;
};

Key vertex_key(Vertex v);
Key star(const Key& k);

// Finite linear combination of generators over a fixed presentation.
//
// Terms are kept reduced: for k = 1 in the Leavitt basis that excludes pairs ending in
// the same special edge (the first edge leaving a vertex), which makes the term map
// canonical. For k >= 2 terms are expanded to a common d(nu) and then complete
// Cuntz-Krieger families with equal coefficients are contracted. That form is not
// canonical, so equality goes through is_zero(a - b).
class Element {
public:
    const Graph* graph = nullptr;
    std::map<Key, Gauss> terms;

    Element() = default;
    explicit Element(const Graph& g) : graph(&g) {}
    Element(const Graph& g, const Key& key, const Gauss& c = Gauss(1));

    static Element vertex(const Graph& g, Vertex v);
    static Element edge(const Graph& g, Edge e);
    static Element edge_star(const Graph& g, Edge e);
    static Element path(const Graph& g, const Path& mu);
    static Element monomial(const Graph& g, const Path& mu, const Path& nu, const Gauss& c = Gauss(1));

    bool is_zero() const { return terms.empty(); }
    // Brings an arbitrary term map into the reduced form described above.
    void reduce();

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(const Gauss& c);

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator-(Element a) { return a *= Gauss(-1); }
    friend Element operator*(const Gauss& c, Element a) { return a *= c; }
    friend bool operator==(const Element& a, const Element& b) { return (a - b).is_zero(); }
};

Element multiply(const Element& a, const Element& b);
inline Element operator*(const Element& a, const Element& b) { return multiply(a, b); }
Element involution(const Element& a);

Degree key_degree(const Graph& g, const Key& k);
std::map<Degree, Element> grade(const Element& a);
Element expectation(const Element& a);
bool is_homogeneous(const Element& a);

// Sum of the distinct vertex projections at the ends of every term.
Element local_unit(const std::vector<Element>& as);

// Expands S_mu S_nu^* to sum over lambda of S_{mu lambda} S_{nu lambda}^* so that each
// color of max(d(mu), d(nu)) reaches `level` (paths into a sink stay as they are).
// Requires max(d(mu), d(nu)) <= level on every term.
std::map<Key, Gauss> expand_to_level(const Element& a, int level);

// Join of d(nu) over the terms of a.
Degree nu_join(const Element& a);
// Terms of a rewritten with d(nu) == n on every key (needs n >= nu_join(a)). For k >= 2
// these keys are linearly independent, so the map is a coordinate vector.
std::map<Key, Gauss> expand_nu_to(const Element& a, const Degree& n);
// Keys S_{mu lambda} S_{nu lambda}^* with d(nu lambda) == n.
std::vector<Key> expand_key(const Graph& g, const Key& key, const Degree& n);

// [D, a] for k = 1: each term scaled by |mu| - |nu|.
Element dirac_commutator(const Element& a);

// [D, a] for k >= 2 as sum over colors c of i gamma^c (x) parts[c - 1].
struct CliffordCommutator {
    std::vector<Element> parts;
};
CliffordCommutator dirac_commutator_k(const Element& a);

struct DeltaSummary {
    bool bounded = true;
    // max over homogeneous components of (|n|^2)^order; for k = 1 the square root is
    // exposed as norm_bound.
    Rational norm_bound_sq;
    Rational norm_bound;  // k = 1 only: max |n|^order
};
DeltaSummary delta_action(const Element& a, int order);

std::string to_string(const Element& a);

}  // namespace ckspec
