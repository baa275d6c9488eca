#pragma once

#include "qam/spectral.hpp"

#include <vector>

namespace qam {

struct Trajectory {
    std::vector<double> times;
    std::vector<Complex> exp_a;     // <a>(t)
    std::vector<double> purity;
    std::vector<Matrix> states;     // filled only when keep_states
};

// Geometric time grid from t_min to t_max (inclusive); dynamics span decades.
std::vector<double> geometric_times(double t_min, double t_max, int points);

// Propagation through the spectral mode sum
// rho(t) = rho_ss + sum_{j>1} tr(L_j^dag rho0) e^{lambda_j t} R_j.
// Verifies completeness at t = 0 (residual <= 1e-6) and skips modes whose
// coefficient is numerically irrelevant (|c_j| ||R_j|| < 1e-12).
Trajectory evolve_spectral(const SpectralDecomposition& dec, const Matrix& rho0,
                           const std::vector<double>& times, bool keep_states = false);

// Independent oracle: adaptive Dormand-Prince RK45 on d rho/dt applied
// term by term from the model parameters (no superoperator matrix, no
// eigendecomposition).
Trajectory evolve_integrate(const ModelParams& params, const Matrix& rho0,
                            const std::vector<double>& times, double rel_tol = 1e-8,
                            bool keep_states = false);

} // namespace qam
