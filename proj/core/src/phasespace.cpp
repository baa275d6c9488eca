#include "qam/phasespace.hpp"
#include "qam/errors.hpp"

#include <cmath>

namespace qam {

WignerGrid WignerGrid::centered(double extent, int points) {
    WignerGrid g;
    g.x_min = g.p_min = -extent;
    g.x_max = g.p_max = extent;
    g.points = points;
    return g;
}

namespace {

// W(alpha) = (2/pi) e^{-2|a|^2} [ sum_m rho_mm (-1)^m L_m(4|a|^2)
//   + 2 Re sum_{m<n} rho_mn (-1)^m (2a)^{n-m} sqrt(m!/n!) L_m^{n-m}(4|a|^2) ]
double wigner_point(const Matrix& rho, Complex alpha,
                    const Eigen::VectorXd& half_log_fact) {
    const int d = static_cast<int>(rho.rows());
    const double aa = 4.0 * std::norm(alpha);
    const double log2a = aa > 0 ? std::log(2.0 * std::abs(alpha)) : 0.0;
    const double arg2a = std::arg(alpha);
    double sum = 0.0;
    // q = n - m diagonal offset; Laguerre recurrence upward in m at fixed q:
    // (m+1) L_{m+1}^q = (2m+1+q-x) L_m^q - (m+q) L_{m-1}^q
    for (int q = 0; q < d; ++q) {
        double Lprev = 0.0;
        double L = 1.0; // L_0^q = 1
        for (int m = 0; m + q < d; ++m) {
            if (m > 0) {
                const double Lnext =
                    ((2.0 * (m - 1) + 1.0 + q - aa) * L - (m - 1.0 + q) * Lprev) / m;
                Lprev = L;
                L = Lnext;
            }
            const int n = m + q;
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            if (q == 0) {
                sum += rho(m, m).real() * sign * L;
            } else {
                if (std::abs(alpha) == 0.0) continue; // (2a)^q = 0
                const double logmag = q * log2a + half_log_fact[m] - half_log_fact[n];
                const Complex factor = std::polar(std::exp(logmag), q * arg2a);
                sum += 2.0 * (rho(m, n) * factor).real() * sign * L;
            }
        }
    }
    return (2.0 / M_PI) * std::exp(-2.0 * std::norm(alpha)) * sum;
}

} // namespace

WignerField wigner(const Matrix& op, const WignerGrid& grid) {
    if (op.rows() != op.cols() || op.rows() < 1)
        throw dimension_error("wigner: need a square operator");
    if (grid.points < 2) throw config_error("wigner: grid needs at least 2 points");
    const int d = static_cast<int>(op.rows());
    Eigen::VectorXd half_log_fact(d);
    half_log_fact[0] = 0.0;
    for (int k = 1; k < d; ++k)
        half_log_fact[k] = half_log_fact[k - 1] + 0.5 * std::log(double(k));

    WignerField field;
    field.grid = grid;
    field.values.resize(grid.points, grid.points);
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < grid.points; ++ix)
        for (int ip = 0; ip < grid.points; ++ip)
            field.values(ix, ip) =
                wigner_point(op, Complex(grid.x(ix), grid.p(ip)), half_log_fact);

    const double peak = field.values.cwiseAbs().maxCoeff();
    double boundary = 0.0;
    for (int i = 0; i < grid.points; ++i) {
        boundary = std::max({boundary, std::abs(field.values(0, i)),
                             std::abs(field.values(grid.points - 1, i)),
                             std::abs(field.values(i, 0)),
                             std::abs(field.values(i, grid.points - 1))});
    }
    if (peak > 0 && boundary > 1e-4 * peak)
        warnings::emit("wigner: field not converged at grid boundary (" +
                       std::to_string(boundary / peak) + " of peak)");
    return field;
}

WignerField wigner(const DensityMatrix& rho, const WignerGrid& grid) {
    return wigner(rho.matrix(), grid);
}

double min_negativity(const WignerField& field) { return field.min_value(); }

} // namespace qam
