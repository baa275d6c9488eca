#pragma once

#include "qam/fock.hpp"
#include "qam/model.hpp"

#include <vector>

namespace qam {

// Vectorization is column-stacking throughout the project:
// vec(A X B) = (B^T kron A) vec(X), and the Hilbert-Schmidt inner product
// tr(X^dag Y) equals vec(X)^dag vec(Y).
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, int dim);
Matrix super_left(const Matrix& a);   // X -> A X
Matrix super_right(const Matrix& a);  // X -> X A

enum class LiouvForm { general, shifted };

struct Liouvillian {
    ModelParams params;
    Matrix matrix;   // dim^2 x dim^2, column-stacking convention
    LiouvForm form = LiouvForm::general;

    int dim() const { return params.effective_dim(); }
};

// H_n = delta a^dag a + i eta (a^n e^{i n theta} - a^dag^n e^{-i n theta})
Matrix build_hamiltonian(const ModelParams& p);

// D[O] rho = O rho O^dag - (O^dag O rho + rho O^dag O)/2
Matrix dissipator_apply(const Matrix& jump, const Matrix& rho);

// Action of the generator on a state, assembled term by term from the
// parameters. Used by the integrator oracle; independent of the
// superoperator matrix assembly below.
Matrix generator_action(const ModelParams& p, const Matrix& rho);

Liouvillian build_liouvillian_general(const ModelParams& p);

// Shifted-dissipator form: -i delta [a^dag a, .] + g1 D[a] + g_n D[a^n - beta^n]
// with beta^n = 2 eta e^{i n theta} / gamma_n (principal root). Same spectrum
// as the general form (the two differ by a phase-space rotation).
Liouvillian build_liouvillian_shifted(const ModelParams& p);

// |beta| = (2 n eta / (m gamma_m))^{1/(2m-n)}; requires n < 2m.
double lobe_amplitude(const ModelParams& p);

// Diagonal unitary exp(i phi a^dag a).
Matrix number_rotation(int dim, double phi);
// Superoperator of rho -> U rho U^dag for U = number_rotation(dim, phi).
Matrix rotation_superop(int dim, double phi);

// Indices of the vectorized basis grouped by Fock charge (row - col) mod n.
// The generator never couples distinct classes, which exactly
// block-diagonalizes the superoperator.
std::vector<std::vector<int>> charge_sectors(int dim, int n);

} // namespace qam
