#pragma once

#include "ckspec/linalg.hpp"

#include <vector>

namespace ckspec {

// Generators gamma^1..gamma^k of the complex Clifford algebra as 2^{floor(k/2)}-square
// matrices with (gamma^j)^* = -gamma^j and gamma^j gamma^l + gamma^l gamma^j = -2 delta Id.
//
// Built as i times Jordan-Wigner tensors of Pauli matrices, then assigned to index
// slots so that odd slots hold the generators with conj(gamma) = -gamma (symmetric,
// imaginary entries) and even slots the real antisymmetric ones; for k = 4n the roles
// swap. raw_index[j] records which Jordan-Wigner generator landed in slot j.
struct CliffordGenerators {
    int k = 0;
    size_t dim = 1;
    std::vector<Matrix> gamma;
    std::vector<int> raw_index;
};

CliffordGenerators generators(int k);
size_t spinor_dim(int k);
int s_of_k(int k);

Matrix product_of_generators(const CliffordGenerators& c);  // gamma^1 ... gamma^k
// chi = gamma^2 gamma^4 ... gamma^{2 floor(k/2)}; the identity for k = 1.
Matrix chi(const CliffordGenerators& c);
// Grading i^{floor((k+1)/2)} gamma^1 ... gamma^k, which squares to Id.
Matrix grading(const CliffordGenerators& c);

struct VolumeForm {
    Gauss scalar;    // i^{ceil((k+1)/2)}
    Matrix omega;    // scalar * gamma^1 ... gamma^k
    Matrix omega_sq;
    bool squares_to_identity = false;
};
VolumeForm volume_form(const CliffordGenerators& c);

// Signs are +1 or -1, or 0 when the defining identity does not hold with any sign
// (eps_dprime is 0 for odd k, where there is no grading).
struct RealitySigns {
    int eps = 0;
    int eps_prime = 0;
    int eps_dprime = 0;
    friend bool operator==(const RealitySigns&, const RealitySigns&) = default;
};

struct RealityData {
    int k = 0;
    int s_k = 0;
    Matrix chi;
    bool chi_real = false;
    bool chi_adjoint_rule = false;  // chi^* = (-1)^{m(m+1)/2} chi, m = floor(k/2)
    bool antiunitary = false;       // chi^* chi = Id
    RealitySigns signs;
    // J D Phi_n J^{-1} = sign * D Phi_{-n} for every n in [-window, window]^k \ {0}
    int degree_reversal_sign = 0;
    bool degree_reversal_ok = false;
    int degree_window = 0;
    int omega_eps_dprime = 0;  // the same identity evaluated with the volume form scalar
};

// J acts on spinors by x -> chi conj(x) and on the algebra part by x -> x^*.
RealityData reality_operator(int k, int degree_window = 3);
RealityData reality_data(const CliffordGenerators& c, const Matrix& chi, int degree_window = 3);

RealitySigns table_signs(int k);
int degree_reversal_formula(int k);  // (-1)^{floor((k+1)/2)(k+2)}

struct SignTableRow {
    int k = 0;
    RealitySigns computed;
    RealitySigns expected;
    bool degree_reversal_ok = false;
    bool pass = false;
};
std::vector<SignTableRow> sign_table_check(int kmax, int degree_window = 3);

}  // namespace ckspec
