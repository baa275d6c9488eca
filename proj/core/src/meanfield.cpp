#include "qam/meanfield.hpp"
#include "qam/errors.hpp"
#include "qam/liouvillian.hpp"

#include <cmath>

namespace qam {

using Cx = std::complex<double>;

Cx mf_rhs(Cx alpha, const ModelParams& p) {
    const Cx i(0.0, 1.0);
    const double r2 = std::norm(alpha);
    Cx drive = 0.0;
    if (p.eta != 0.0)
        drive = -double(p.n) * p.eta * std::pow(std::conj(alpha), p.n - 1) *
                std::polar(1.0, -p.n * p.theta);
    return -0.5 * p.gamma1 * alpha - i * p.delta * alpha + drive -
           0.5 * p.m * p.gamma_m * std::pow(r2, p.m - 1) * alpha;
}

std::pair<double, double> mf_rhs_polar(double R, double phi, const ModelParams& p) {
    // dR = Re(e^{-i phi} da/dt), R dphi = Im(e^{-i phi} da/dt); written out
    // the drive enters through n(phi + theta).
    const double ang = p.n * (phi + p.theta);
    const double dR = -0.5 * p.gamma1 * R - 0.5 * p.m * p.gamma_m * std::pow(R, 2 * p.m - 1) -
                      double(p.n) * p.eta * std::pow(R, p.n - 1) * std::cos(ang);
    const double dphi = -p.delta + double(p.n) * p.eta * std::pow(R, p.n - 2) * std::sin(ang);
    return {dR, dphi};
}

namespace {

// Wirtinger derivatives of mf_rhs -> real 2x2 Jacobian over (x, y).
Eigen::Matrix2d real_jacobian(Cx alpha, const ModelParams& p) {
    const Cx i(0.0, 1.0);
    const double r2 = std::norm(alpha);
    const Cx df_da = -0.5 * p.gamma1 - i * p.delta -
                     0.5 * p.m * p.gamma_m *
                         (double(p.m - 1) * std::pow(r2, std::max(p.m - 2, 0)) *
                              std::conj(alpha) * alpha +
                          std::pow(r2, p.m - 1));
    Cx df_dac = -0.5 * p.m * p.gamma_m * double(p.m - 1) *
                std::pow(r2, std::max(p.m - 2, 0)) * alpha * alpha;
    if (p.eta != 0.0 && p.n >= 2)
        df_dac += -double(p.n) * double(p.n - 1) * p.eta *
                  std::pow(std::conj(alpha), p.n - 2) * std::polar(1.0, -p.n * p.theta);
    Eigen::Matrix2d J;
    const Cx fx = df_da + df_dac;            // d f / dx
    const Cx fy = i * (df_da - df_dac);      // d f / dy
    J << fx.real(), fy.real(), fx.imag(), fy.imag();
    return J;
}

} // namespace

std::vector<MeanFieldFixedPoint> fixed_points(const ModelParams& p) {
    p.validate();
    std::vector<MeanFieldFixedPoint> out;
    if (p.eta == 0.0) return out; // only the origin
    if (p.gamma_m <= 0) throw config_error("fixed_points: gamma_m must be > 0");
    if (p.n >= 2 * p.m)
        throw regime_error("fixed_points: requires n < 2m");

    const double R0 = lobe_amplitude(p);
    if (R0 < 2.0)
        warnings::emit("fixed_points: seed amplitude R = " + std::to_string(R0) +
                       " below the R >> 1 validity regime");
    // Rotating solutions only exist when the detuning can be balanced.
    if (p.n >= 2 && p.delta > double(p.n) * p.eta * std::pow(R0, p.n - 2))
        return out;

    for (int j = 1; j <= p.n; ++j) {
        const double phase = p.theta + (2.0 * j + 1.0) * M_PI / p.n;
        Cx z = std::polar(R0, phase);
        bool converged = false;
        for (int it = 0; it < 200; ++it) {
            const Cx f = mf_rhs(z, p);
            if (std::abs(f) < 1e-12) {
                converged = true;
                break;
            }
            const Eigen::Matrix2d J = real_jacobian(z, p);
            Eigen::Vector2d rhs(-f.real(), -f.imag());
            Eigen::Vector2d step = J.fullPivLu().solve(rhs);
            double damp = 1.0;
            const double f0 = std::abs(f);
            while (damp > 1e-8) {
                const Cx zt = z + damp * Cx(step(0), step(1));
                if (std::abs(mf_rhs(zt, p)) < f0) {
                    z = zt;
                    break;
                }
                damp *= 0.5;
            }
            if (damp <= 1e-8) break;
        }
        if (!converged)
            throw solver_error("fixed_points: Newton failed from seed amplitude " +
                               std::to_string(R0) + ", phase " + std::to_string(phase));
        MeanFieldFixedPoint fp;
        fp.alpha = z;
        fp.residual = std::abs(mf_rhs(z, p));
        const Eigen::Matrix2d J = real_jacobian(z, p);
        const double tr = J.trace();
        const double det = J.determinant();
        const Cx disc = std::sqrt(Cx(tr * tr - 4.0 * det, 0.0));
        fp.jacobian_eigs[0] = 0.5 * (tr + disc);
        fp.jacobian_eigs[1] = 0.5 * (tr - disc);
        fp.stable = fp.jacobian_eigs[0].real() < 0 && fp.jacobian_eigs[1].real() < 0;
        out.push_back(fp);
    }
    return out;
}

std::vector<Cx> mf_integrate(Cx alpha0, const ModelParams& p,
                             const std::vector<double>& times, double rel_tol) {
    if (!std::isfinite(alpha0.real()) || !std::isfinite(alpha0.imag()))
        throw config_error("mf_integrate: initial state must be finite");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw config_error("mf_integrate: times must be strictly increasing");

    std::vector<Cx> out;
    out.reserve(times.size());
    Cx y = alpha0;
    double t = 0.0;
    std::size_t next = 0;
    if (!times.empty() && times[0] == 0.0) {
        out.push_back(y);
        ++next;
    }
    if (next >= times.size()) return out;
    const double t_end = times.back();
    double h = std::min(1e-3, t_end / 100.0);

    auto rk_step = [&](Cx y0, double hh) {
        // classic Cash-Karp style 4(5) embedded pair on a scalar complex ODE
        const Cx k1 = mf_rhs(y0, p);
        const Cx k2 = mf_rhs(y0 + hh * 0.25 * k1, p);
        const Cx k3 = mf_rhs(y0 + hh * (3.0 / 32 * k1 + 9.0 / 32 * k2), p);
        const Cx k4 = mf_rhs(y0 + hh * (1932.0 / 2197 * k1 - 7200.0 / 2197 * k2 +
                                        7296.0 / 2197 * k3), p);
        const Cx k5 = mf_rhs(y0 + hh * (439.0 / 216 * k1 - 8.0 * k2 + 3680.0 / 513 * k3 -
                                        845.0 / 4104 * k4), p);
        const Cx k6 = mf_rhs(y0 + hh * (-8.0 / 27 * k1 + 2.0 * k2 - 3544.0 / 2565 * k3 +
                                        1859.0 / 4104 * k4 - 11.0 / 40 * k5), p);
        const Cx y5 = y0 + hh * (16.0 / 135 * k1 + 6656.0 / 12825 * k3 + 28561.0 / 56430 * k4 -
                                 9.0 / 50 * k5 + 2.0 / 55 * k6);
        const Cx y4 = y0 + hh * (25.0 / 216 * k1 + 1408.0 / 2565 * k3 + 2197.0 / 4104 * k4 -
                                 1.0 / 5 * k5);
        return std::make_pair(y5, std::abs(y5 - y4));
    };

    while (t < t_end) {
        if (h < 1e-14 * t_end)
            throw solver_error("mf_integrate: step underflow");
        bool hit = false;
        double h_try = h;
        if (t + h_try >= times[next]) {
            h_try = times[next] - t;
            hit = true;
        }
        auto [y_new, err] = rk_step(y, h_try);
        const double tol = rel_tol * std::max(1.0, std::abs(y_new));
        if (err <= tol) {
            t += h_try;
            y = y_new;
            if (std::abs(y) > 1e3)
                throw solver_error("mf_integrate: trajectory diverged (R > 1e3)");
            if (hit) {
                out.push_back(y);
                ++next;
                if (next >= times.size()) break;
            }
        }
        const double grow = err > 0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
        h = h_try * std::min(5.0, std::max(0.1, grow));
    }
    return out;
}

} // namespace qam
