#pragma once

#include "qam/model.hpp"

#include <complex>
#include <vector>

namespace qam {

// Mean-field equation of motion
//   da/dt = -(g1/2) a - i delta a - n eta conj(a)^{n-1} e^{-i n theta}
//           - (m/2) g_m |a|^{2(m-1)} a
std::complex<double> mf_rhs(std::complex<double> alpha, const ModelParams& p);

// Polar form (R, phi): dR/dt and dphi/dt, consistent with mf_rhs by the
// chain rule.
std::pair<double, double> mf_rhs_polar(double R, double phi, const ModelParams& p);

struct MeanFieldFixedPoint {
    std::complex<double> alpha;
    double residual = 0.0;
    bool stable = false;
    std::complex<double> jacobian_eigs[2];
};

// The n rotating fixed points: analytic seed amplitude
// (2 n eta / (m gamma_m))^{1/(2m-n)} at the odd-phase branch, refined by a
// damped Newton iteration on the exact mf_rhs = 0 system. Returns an empty
// list when no rotating fixed point exists (delta too large) and only the
// origin is stable; seeds that fail to converge raise solver_error.
std::vector<MeanFieldFixedPoint> fixed_points(const ModelParams& p);

// Adaptive RK45 integration of the mean-field ODE; diverging trajectories
// (R > 1e3) raise solver_error.
std::vector<std::complex<double>> mf_integrate(std::complex<double> alpha0,
                                               const ModelParams& p,
                                               const std::vector<double>& times,
                                               double rel_tol = 1e-10);

} // namespace qam
