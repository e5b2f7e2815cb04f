#pragma once

#include "ckspec/algebra.hpp"
#include "ckspec/graph.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ckspec {

struct GraphTrace {
    const Graph* graph = nullptr;
    std::vector<Rational> values;               // by core vertex index
    std::map<std::string, Rational> end_values;  // by End id (1-graphs)

    // Tail and head vertices carry the value of their core vertex.
    const Rational& value(Vertex v) const { return values.at(v.base); }
    bool faithful() const;
};

std::map<std::string, Rational> default_end_values(const Graph& g);

// 1-graphs: backward propagation from the end values. k >= 2: the positive solution of
// g(v) = sum over v Lambda^{e_c} of g(r) for every color c, scaled so the first vertex
// gets 1 (end_values ignored).
GraphTrace solve_graph_trace(const Graph& g, const std::map<std::string, Rational>& end_values);
GraphTrace solve_graph_trace(const Graph& g);

// Residual of the trace condition at each vertex that emits edges; all zero for a trace.
bool satisfies_trace_condition(const GraphTrace& t);

Gauss trace_functional(const GraphTrace& t, const Element& a);

struct KTheoryRanks {
    int k0 = 0;
    int k1 = 0;
};
KTheoryRanks ktheory_ranks(const Graph& g);

struct FixedPointCanonicalForm {
    struct Term {
        Vertex vertex;
        std::string end;
        Path path;  // from vertex to the first vertex inside the end
        Gauss coefficient;
    };
    const Graph* graph = nullptr;
    std::map<std::pair<Vertex, std::string>, Term> terms;
};

// Requires a diagonal degree-0 element.
FixedPointCanonicalForm canonical_F_form(const Element& f);
Element to_element(const FixedPointCanonicalForm& form);

struct FixedPointNorms {
    Rational cstar_norm_sq;
    Rational hilbert_norm_sq;
    Rational module_norm_sq;
    Rational min_end_trace;
    bool inequality_holds = false;  // hilbert >= min_end_trace * module
};
FixedPointNorms fixed_point_norms(const FixedPointCanonicalForm& form, const GraphTrace& t);

struct FixedPointNormsF {
    double cstar_norm_sq = 0;
    double hilbert_norm_sq = 0;
    double module_norm_sq = 0;
    double min_end_trace = 0;
};
// Float route for irrational coefficients: the element is sum_i weights[i] * parts[i].
FixedPointNormsF fixed_point_norms_float(const std::vector<double>& weights,
                                         const std::vector<FixedPointCanonicalForm>& parts,
                                         const GraphTrace& t);

}  // namespace ckspec
