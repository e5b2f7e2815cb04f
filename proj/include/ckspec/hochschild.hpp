#pragma once

#include "ckspec/algebra.hpp"
#include "ckspec/clifford.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ckspec {

// Sum of coefficient * (k_0 (x) k_1 (x) ... (x) k_n) over generator keys.
struct Chain {
    const Graph* graph = nullptr;
    size_t arity = 0;
    std::map<std::vector<Key>, Gauss> terms;

    Chain() = default;
    Chain(const Graph& g, size_t n) : graph(&g), arity(n) {}

    void add(const std::vector<Key>& factors, const Gauss& c);
    // Multilinear expansion of an elementary tensor of elements.
    void add_tensor(const std::vector<Element>& factors, const Gauss& c);

    Chain& operator+=(const Chain& o);
    Chain& operator-=(const Chain& o);
    Chain& operator*=(const Gauss& c);
};

// Expands every slot to a common d(nu) per slot, which is a basis for k >= 2; for k = 1
// slots are already canonical and the chain is returned unchanged.
Chain canonical(const Chain& ch);
bool is_zero(const Chain& ch);

Chain boundary(const Chain& ch);

// c_T = sum over e in E_T of S_e^* (x) S_e where E_T holds the core edges and the first T
// edges of every tail and implied head.
Chain orientation_cycle_1graph(const Graph& g, int truncation);
// b(c_T) predicted from entry counts: (|v|_1 - 1) p_v at non-sinks, |v|_1 p_v at sinks,
// +p at the depth-T tail vertex and -p at the depth-T head vertex.
Element predicted_boundary_1graph(const Graph& g, int truncation);

struct OrientationCycle {
    Chain body;                   // sum over mu in Lambda^{1_k}, sigma of (1/k!)(-1)^sigma ...
    int scalar_i_power = 0;       // c_k = i^{scalar_i_power} * body
    bool scalar_differs_from_1graph_cycle = false;  // k = 1: the plain cycle carries no i
};

// Throws when single exit fails unless require_single_exit is false.
OrientationCycle orientation_cycle_kgraph(const Graph& g, bool require_single_exit = true);

// pi_D for 1-graphs: sum a_0 [D, a_1] ... [D, a_n].
Element pi_D(const Chain& ch);

// dim x dim matrix with algebra entries: the Clifford factor tensored with A_c.
struct SpinorMatrix {
    size_t dim = 0;
    std::vector<Element> entries;  // row-major

    SpinorMatrix() = default;
    SpinorMatrix(const Graph& g, size_t d);
    Element& at(size_t r, size_t c) { return entries[r * dim + c]; }
    const Element& at(size_t r, size_t c) const { return entries[r * dim + c]; }
    friend bool operator==(const SpinorMatrix& a, const SpinorMatrix& b);
};

SpinorMatrix tensor(const Matrix& m, const Element& a);
SpinorMatrix scale(const Gauss& c, SpinorMatrix m);
// Returns c with a == c * b when such a scalar exists (b nonzero).
std::optional<Gauss> proportionality(const SpinorMatrix& a, const SpinorMatrix& b);

enum class CommutatorConvention {
    WithI,   // [D, a] = i gamma(d) (x) a
    Symbol,  // [D, a] = gamma(d) (x) a, dropping the factor i
};

// pi_D of a k-graph chain; the chain's own scalar is not included.
SpinorMatrix pi_D_k(const Chain& ch, const CliffordGenerators& cl, CommutatorConvention conv);

struct PiDReport {
    SpinorMatrix raw;         // i^p * pi_D(body) with [D, a] = i gamma(d) a
    SpinorMatrix symbol;      // i^p * pi_D(body) with [D, a] = gamma(d) a
    SpinorMatrix expected;    // omega_C (x) sum over mu of p_{r(mu)}
    Element projection_sum;   // sum over mu in Lambda^{1_k} of p_{r(mu)}
    bool projection_is_identity = false;  // each vertex exactly once
    bool symbol_matches = false;
    bool raw_matches = false;
    std::optional<Gauss> raw_over_expected;
    Gauss omega_sq_scalar;    // omega_C^2 when scalar
};
PiDReport pi_D_report(const Graph& g, const OrientationCycle& c);

struct CancellationWitness {
    std::string vertex;
    int color = 0;
    int multiplicity = 0;
    std::string lambda;
};

struct CancellationReport {
    bool first_step_identity = false;  // b of each mu-block equals head plus tail terms
    bool step_i = false;    // middle terms cancel pairwise under t_j on A_j -> B_j
    bool step_ii = false;   // elementary tensors agree termwise
    bool step_iii = false;  // head terms cancel against the tail terms via Cuntz-Krieger
    bool boundary_zero = false;
    std::string failing_step;  // "", "i", "ii" or "iii"
    std::vector<CancellationWitness> witnesses;
};
CancellationReport verify_cancellation_steps(const Graph& g);

}  // namespace ckspec
