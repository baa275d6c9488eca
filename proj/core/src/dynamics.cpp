#include "qam/dynamics.hpp"
#include "qam/errors.hpp"

#include <cmath>

namespace qam {

std::vector<double> geometric_times(double t_min, double t_max, int points) {
    if (points < 2 || t_min <= 0 || t_max <= t_min)
        throw config_error("geometric_times: need points >= 2 and 0 < t_min < t_max");
    std::vector<double> out(points);
    const double ratio = std::log(t_max / t_min) / (points - 1);
    for (int i = 0; i < points; ++i) out[i] = t_min * std::exp(ratio * i);
    out.back() = t_max;
    return out;
}

namespace {

void check_times(const std::vector<double>& times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0) throw config_error("times must be >= 0");
        if (i > 0 && times[i] <= times[i - 1])
            throw config_error("times must be strictly increasing");
    }
}

void record(Trajectory& tr, const Matrix& a, const Matrix& rho, double t, bool keep) {
    tr.times.push_back(t);
    tr.exp_a.push_back((a * rho).trace());
    tr.purity.push_back((rho * rho).trace().real());
    if (keep) tr.states.push_back(rho);
}

} // namespace

Trajectory evolve_spectral(const SpectralDecomposition& dec, const Matrix& rho0,
                           const std::vector<double>& times, bool keep_states) {
    check_times(times);
    if (rho0.rows() != dec.dim)
        throw dimension_error("evolve_spectral: dimension mismatch");
    const int N = dec.dim * dec.dim;
    const Vector v0 = vectorize(rho0);
    Vector c = dec.left_vecs.adjoint() * v0;

    // completeness at t=0
    Vector rec = dec.right_vecs * c;
    const double residual = (rec - v0).norm();
    if (residual > 1e-6)
        throw solver_error("evolve_spectral: t=0 mode-sum residual " + std::to_string(residual) +
                           " (incomplete eigenbasis)");

    // drop numerically irrelevant modes
    std::vector<int> keep;
    keep.reserve(N);
    for (int j = 0; j < N; ++j)
        if (std::abs(c[j]) * dec.right_vecs.col(j).norm() >= 1e-12) keep.push_back(j);

    const Matrix a = annihilation(dec.dim);
    Trajectory tr;
    for (double t : times) {
        Vector v = Vector::Zero(N);
        for (int j : keep) v += c[j] * std::exp(dec.eigenvalues[j] * t) * dec.right_vecs.col(j);
        Matrix rho = unvectorize(v, dec.dim);
        rho = 0.5 * (rho + rho.adjoint());
        const double tr_dev = std::abs(rho.trace() - Complex(1.0, 0.0));
        if (tr_dev > 1e-8)
            throw solver_error("evolve_spectral: trace drift " + std::to_string(tr_dev));
        record(tr, a, rho, t, keep_states);
    }
    return tr;
}

namespace {

// Dormand-Prince 5(4) coefficients.
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // embedded 4th order
    static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                            e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;
};

} // namespace

Trajectory evolve_integrate(const ModelParams& params, const Matrix& rho0,
                            const std::vector<double>& times, double rel_tol,
                            bool keep_states) {
    check_times(times);
    const int d = static_cast<int>(rho0.rows());
    const Matrix a = annihilation(d);
    ModelParams p = params;
    p.dim = d;
    const Matrix h_op = build_hamiltonian(p);
    Matrix am = Matrix::Identity(d, d);
    for (int i = 0; i < p.m; ++i) am = am * a;
    const Matrix a_dag_a = (a.adjoint() * a).eval();
    const Matrix am_dag_am = (am.adjoint() * am).eval();
    const Complex i_unit(0.0, 1.0);
    auto rhs = [&](const Matrix& rho) -> Matrix {
        Matrix out = -i_unit * (h_op * rho - rho * h_op);
        if (p.gamma1 > 0)
            out += p.gamma1 * (a * rho * a.adjoint() - 0.5 * (a_dag_a * rho + rho * a_dag_a));
        if (p.gamma_m > 0)
            out += p.gamma_m * (am * rho * am.adjoint() - 0.5 * (am_dag_am * rho + rho * am_dag_am));
        return out;
    };

    Trajectory tr;
    Matrix y = rho0;
    double t = 0.0;
    std::size_t next = 0;
    if (!times.empty() && times[0] == 0.0) {
        record(tr, a, y, 0.0, keep_states);
        ++next;
    }
    if (next >= times.size()) return tr;

    const double t_end = times.back();
    double h = std::min(1e-3, t_end / 100.0);
    const double abs_tol = rel_tol; // states have unit scale (trace 1)
    Matrix k1 = rhs(y);
    const double h_min = 1e-13 * t_end;

    while (t < t_end) {
        if (h < h_min)
            throw solver_error("evolve_integrate: step size underflow at t = " +
                               std::to_string(t) + "; system too stiff, use the spectral path");
        bool hit = false;
        double h_try = h;
        if (t + h_try >= times[next]) {
            h_try = times[next] - t;
            hit = true;
        }
        using D = Dopri5;
        Matrix k2 = rhs(y + h_try * (D::a21 * k1));
        Matrix k3 = rhs(y + h_try * (D::a31 * k1 + D::a32 * k2));
        Matrix k4 = rhs(y + h_try * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3));
        Matrix k5 = rhs(y + h_try * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 + D::a54 * k4));
        Matrix k6 = rhs(y + h_try * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 + D::a64 * k4 +
                                     D::a65 * k5));
        Matrix y5 = y + h_try * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 + D::b5 * k5 + D::b6 * k6);
        Matrix k7 = rhs(y5);
        Matrix y4 = y + h_try * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 + D::e6 * k6 +
                                 D::e7 * k7);
        const double err = (y5 - y4).norm() / (abs_tol + rel_tol * y5.norm());

        if (err <= 1.0) {
            t += h_try;
            y = std::move(y5);
            k1 = std::move(k7); // FSAL
            if (hit) {
                while (next < times.size() && std::abs(times[next] - t) <= 1e-14 * t_end) {
                    record(tr, a, y, times[next], keep_states);
                    ++next;
                }
                if (next >= times.size()) break;
            }
        }
        const double safety = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h = h_try * std::min(5.0, std::max(0.2, safety));
    }
    return tr;
}

} // namespace qam
