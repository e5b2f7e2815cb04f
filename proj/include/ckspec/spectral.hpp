#pragma once

#include "ckspec/algebra.hpp"
#include "ckspec/clifford.hpp"
#include "ckspec/trace.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ckspec {

// Orthogonal basis of the level-L truncation of L^2(A, tau).
//
// Basis keys S_mu S_nu^* have max(d(mu), d(nu)) == L in every color, except keys whose
// range is a sink, which may be shorter. Sources lie in the window |depth| <= L, so rays
// contribute finitely many vectors. Every key with max <= L and sources in the window
// expands into these vectors, and distinct basis keys are orthogonal with squared norm
// tau(p_{r(mu)}).
struct Truncation {
    const Graph* graph = nullptr;
    GraphTrace trace;
    int level = 0;
    std::vector<Key> basis;
    std::vector<Rational> gram;
    std::map<Key, size_t> index;

    size_t size() const { return basis.size(); }
    Element element(size_t i) const { return Element(*graph, basis[i]); }
    bool in_window(Vertex v) const;
    // Orthogonal projection of a onto the span of the basis.
    std::map<size_t, Gauss> project(const Element& a) const;
    Element from_coordinates(const std::map<size_t, Gauss>& x) const;
    // <x, y> = tau(x^* y)
    Gauss inner(const Element& x, const Element& y) const;
};

Truncation build_truncation(const Graph& g, const GraphTrace& t, int level);

// Sparse operator on the truncation basis; each entry is a spinor_dim-square block.
struct TruncatedOperator {
    size_t size = 0;
    size_t spinor_dim = 1;
    std::map<std::pair<size_t, size_t>, Matrix> blocks;  // (row, column)
};

// D on each basis vector: |mu| - |nu| for k = 1, sum over m of n_m i gamma^m for k >= 2
// with n = d(mu) - d(nu).
TruncatedOperator build_D(const Truncation& tr);
// <T x_i, x_j> == <x_i, T x_j> on all basis pairs, using the gram weights.
bool is_self_adjoint(const TruncatedOperator& op, const Truncation& tr);
// k = 1: eigenvalue -> number of basis vectors.
std::map<Rational, size_t> eigen_multiplicities(const TruncatedOperator& d);

// Compressed left multiplication P a P on the truncation.
using SparseOperator = std::map<std::pair<size_t, size_t>, Gauss>;
SparseOperator left_action(const Truncation& tr, const Element& a);

// Sum of c * Theta_{x, y} with Theta_{x, y}(z) = x Phi(y^* z).
struct ThetaTerm {
    Gauss c;
    Element x;
    Element y;
};
struct ThetaDecomposition {
    const Graph* graph = nullptr;
    std::vector<ThetaTerm> terms;
};

Element apply(const ThetaDecomposition& d, const Element& z);
// Theta_{x1, y1} Theta_{x2, y2} = Theta_{x1 Phi(y1^* x2), y2}
ThetaDecomposition compose(const ThetaDecomposition& s, const ThetaDecomposition& t);
// sum c tau((y|x)_R) = sum c tau(Phi(y^* x))
Gauss semifinite_trace(const ThetaDecomposition& d, const GraphTrace& t);

// Family {Theta_{S_mu S_lambda^*, S_mu S_lambda^*} / m} over mu in v Lambda^{n+},
// lambda in Lambda^{n-} r(mu), m = |Lambda^{n-} r(mu)|. Validated against p_v Phi_n on
// every basis vector; a mismatch throws an internal error.
ThetaDecomposition decompose_projection(const Truncation& tr, Vertex v, const Degree& n);
// First basis index where d differs from p_v Phi_n, if any.
std::optional<size_t> projection_mismatch(const Truncation& tr, const ThetaDecomposition& d, Vertex v,
                                          const Degree& n);

// tau~(p_v Phi_n) from the decomposition formula without building it; exact.
// k = 1 handles every n by frontier propagation; k >= 2 needs single exit.
Rational projection_trace(const Graph& g, const GraphTrace& t, Vertex v, const Degree& n);

struct ProfileSample {
    double t = 0;
    double F = 0;
};

struct SpectralProfile {
    int k = 1;
    long window = 0;
    std::optional<std::string> vertex;  // nullopt: (1 + D^2)^{-k/2} itself
    // (eigenvalue, tau~-multiplicity), eigenvalues decreasing.
    std::vector<std::pair<double, double>> eigenvalues;
    std::vector<ProfileSample> samples;
    double total_mass = 0;
    double final_value = 0;  // F at the largest sampled t
    std::optional<double> limit_estimate;  // intercept of F against 1/log(1+t)
    double fit_slope = 0;
    double band_low = 0;   // min and max of F over the last decade of samples
    double band_high = 0;
    bool increasing_tail = false;  // direction of the samples over the last decade
    std::string diagnostics;
    // Multiplicities checked against semifinite_trace of validated decompositions for
    // |n| <= multiplicity_check_level (k = 1).
    int multiplicity_check_level = 0;
    bool multiplicities_validated = false;
};

// k = 1: eigenvalues (1 + n^2)^{-1/2}, n in [-N, N]. k >= 2: (1 + |n|^2)^{-k/2} over the
// lattice ball |n| <= N with multiplicity 2^{floor(k/2)} tau~(p_v Phi_n).
SpectralProfile singular_profile(const Graph& g, const GraphTrace& t, std::optional<Vertex> v, long window,
                                 int samples_per_decade = 20, int check_level = 3);

struct ZetaCheck {
    double s = 0;
    double residue = 0;      // (s - k/2) * sum of multiplicity * (1 + |n|^2)^{-s}
    double half_limit = 0;   // limit_estimate / 2
    double relative_error = 0;
};
// s = k/2 + 1/log N, summed over the profile's eigenvalues.
ZetaCheck zeta_check(const SpectralProfile& profile);

struct ClosednessResult {
    std::string route;  // "gauge" or "determinant"
    Gauss value;        // k = 1 includes the factor 2; k >= 2 omits the Dixmier constant
    // determinant route, per tuple of terms
    std::vector<Rational> determinants;
    std::vector<Gauss> clifford_traces;
    std::vector<Gauss> tau_products;
    bool determinant_identity = true;  // tr(Gamma prod) == det(n) tr(Gamma i^k gamma^1..gamma^k)
    bool zero_sum_forces_zero_det = true;
    std::vector<bool> degree_sum_zero;
};
// k = 1: one generator; k >= 2: k generators.
ClosednessResult closedness_eval(const Graph& g, const GraphTrace& t, const std::vector<Element>& generators);

// p_v for core vertices, S_e and S_e^* for core edges and the first edge of every ray.
std::vector<Element> algebra_generators(const Graph& g);

struct Witness {
    std::string description;
    std::string a;
    std::string b;
    std::string x;
};

struct FirstOrderReport {
    bool order_zero = true;   // [a, b^op] = 0
    bool first_order = true;  // [[D, a], b^op] = 0
    size_t checks = 0;
    std::vector<Witness> violations;
    // left action in place of b^op
    bool left_action_counterexample_found = false;
    std::optional<Witness> left_action_witness;
};
FirstOrderReport first_order_check(const Truncation& tr);

struct RealityReport {
    bool j_squared = true;    // J^2 = Id
    bool jdj = true;          // J D J = -D
    bool right_action = true; // J a^* J x = x a
    bool isometric = true;    // <Jx, Jy> = <y, x>
    size_t checks = 0;
    std::vector<Witness> violations;
};
// J x = x^* on the truncation; k = 1 only.
RealityReport reality_check_1graph(const Truncation& tr);

struct SpinCReport {
    bool holds = true;
    size_t achieved_dimension = 0;
    size_t expected_dimension = 0;
    size_t checks = 0;
    std::vector<Witness> violations;
};
SpinCReport spin_c_generation_check(const Truncation& tr);

struct CommutantReport {
    size_t unknowns = 0;  // dimension of the truncated fixed-point algebra
    size_t solution_dimension = 0;
    size_t interior_dimension = 0;
    bool boundary_artifacts = false;  // solutions beyond the interior ones
    size_t interior_vectors = 0;
};
// Left multiplications by f in the truncated fixed-point algebra (these commute with D)
// such that P f P commutes with P a P for every edge generator a in the window.
// Interior keys have sources with |depth| < L - 1; the interior dimension is the rank of
// the solutions restricted to them.
CommutantReport commutant_probe(const Truncation& tr);

}  // namespace ckspec
