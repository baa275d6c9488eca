#pragma once

#include "qam/fock.hpp"
#include "qam/liouvillian.hpp"

#include <optional>
#include <vector>

namespace qam {

// Sets the number of threads the BLAS backend may use. Worker pools set
// this to 1 so cells do not oversubscribe the machine.
void set_blas_threads(int n);

struct DecomposeOptions {
    int hermitize_modes = -1;   // modes to hermitize; -1 = params.n
    bool monolithic = false;    // bypass charge-sector blocking (diagnostics)
    bool eigenvalues_only = false;
};

// Full spectral decomposition of the Liouvillian. Eigenvalues are sorted by
// descending real part; ties are ordered by ascending |Im| with +Im before
// -Im, so conjugate pairs sit adjacently and deterministically.
//
// Columns of right_vecs/left_vecs hold vec(R_j), vec(L_j) under the
// column-stacking convention with tr(L_j^dag R_k) = delta_jk. The first
// hermitize_modes modes are additionally provided as Hermitian matrices
// (conjugate pairs combined into real/imaginary parts), with
// herm_left[0] = identity and herm_right[0] = rho_ss.
struct SpectralDecomposition {
    ModelParams params;
    int dim = 0;
    Eigen::VectorXcd eigenvalues;
    Matrix right_vecs;
    Matrix left_vecs;

    Matrix steady;          // hermitized, clipped, unit trace
    double clipped_mass = 0.0;
    bool zero_degenerate = false;

    std::vector<Matrix> herm_left;
    std::vector<Matrix> herm_right;
    std::vector<int> pair_starts;   // hermitized indices where a combined pair begins

    Matrix right_mode(int j) const { return unvectorize(right_vecs.col(j), dim); }
    Matrix left_mode(int j) const { return unvectorize(left_vecs.col(j), dim); }
    int herm_count() const { return static_cast<int>(herm_left.size()); }

    DensityMatrix steady_state() const { return DensityMatrix(steady); }
};

SpectralDecomposition decompose(const Liouvillian& L, const DecomposeOptions& opt = {});

// Standalone steady-state solve; requires gamma1 > 0 and a unique zero mode.
DensityMatrix steady_state(const Liouvillian& L);

// State reached asymptotically from rho0: the projection of rho0 onto the
// modes with |Re lambda| <= re_cutoff, hermitized and clipped. For a unique
// steady state this is rho_ss itself; at gamma1 = 0 it resolves the
// degenerate manifold deterministically given the initial state.
Matrix asymptotic_projection(const SpectralDecomposition& dec, const Matrix& rho0,
                             double re_cutoff = 1e-7);

struct Timescales {
    std::vector<double> tau;   // tau[j] = -1/Re lambda_j for j >= 2; tau[0], tau[1] unused
    bool has_infinite = false;

    // tau_n / tau_{n+1} in the paper's 1-based mode numbering.
    double gap_ratio(int n) const;
};

Timescales timescales(const SpectralDecomposition& dec, int count = 0);

// Max residual ||L R_j - lambda_j R_j|| / ||L|| over the first k modes.
double eigen_residual(const Liouvillian& L, const SpectralDecomposition& dec, int k);

} // namespace qam
