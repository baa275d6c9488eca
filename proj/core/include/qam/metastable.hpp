#pragma once

#include "qam/spectral.hpp"

#include <vector>

namespace qam {

// The n extreme metastable phases mu_l spanning the slow manifold, plus the
// dual system that turns a state into quasiprobabilities p_l (sum 1, may be
// negative). Coefficients live in the hermitized mode basis of the
// decomposition that built the manifold.
struct MetastableManifold {
    int n = 0;
    int dim = 0;
    std::vector<Matrix> phases;        // mu_l, trace 1, possibly slightly non-positive
    Eigen::MatrixXd coeffs;            // n x (n-1), mu_l = rho_ss + sum_j coeffs(l,j) R_{j+1}
    Eigen::MatrixXd dual;              // n x n; p = dual * (1, b_2, ..., b_n)^T
    std::vector<Matrix> herm_left;     // copies of the dual-basis operators
    std::vector<Matrix> herm_right;
    Matrix steady;
    double lobe_beta = 0.0;
};

// (min, max) eigenvalues of the hermitized left modes L_2..L_n.
std::vector<std::pair<double, double>> extreme_coefficients(const SpectralDecomposition& dec, int n);

// Builds the n phases as manifold projections of the lobe states, with the
// coefficient columns centered so that (1/n) sum_l mu_l = rho_ss holds as a
// construction identity. Refuses when gap_ratio(n) < 2.
MetastableManifold build_phases(const SpectralDecomposition& dec, int n);

Eigen::VectorXd quasiprobabilities(const MetastableManifold& man, const Matrix& rho);
Eigen::VectorXd quasiprobabilities(const MetastableManifold& man, const DensityMatrix& rho);

// Quasiprobability trajectories induced by the manifold-restricted evolution
// rho(t) = rho_ss + sum_{j=2..n} tr(L_j^dag rho0) e^{lambda_j t} R_j.
std::vector<Eigen::VectorXd> evolve_in_manifold(const MetastableManifold& man,
                                                const SpectralDecomposition& dec,
                                                const Matrix& rho0,
                                                const std::vector<double>& times);

// The manifold-restricted state at one time (used for observables).
Matrix manifold_state(const MetastableManifold& man, const SpectralDecomposition& dec,
                      const Matrix& rho0, double t);

} // namespace qam
