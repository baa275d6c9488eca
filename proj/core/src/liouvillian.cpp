#include "qam/liouvillian.hpp"
#include "qam/errors.hpp"

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace qam {

Vector vectorize(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvectorize(const Vector& v, int dim) {
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix super_left(const Matrix& a) {
    const int d = static_cast<int>(a.rows());
    return Eigen::kroneckerProduct(Matrix::Identity(d, d), a);
}

Matrix super_right(const Matrix& a) {
    const int d = static_cast<int>(a.rows());
    return Eigen::kroneckerProduct(a.transpose(), Matrix::Identity(d, d));
}

namespace {

Matrix matrix_power(const Matrix& a, int k) {
    const int d = static_cast<int>(a.rows());
    Matrix out = Matrix::Identity(d, d);
    for (int i = 0; i < k; ++i) out = out * a;
    return out;
}

// Superoperator of D[O]: O . O^dag - (O^dag O . + . O^dag O)/2
Matrix dissipator_superop(const Matrix& o) {
    Matrix odag_o = o.adjoint() * o;
    return Eigen::kroneckerProduct(o.conjugate(), o).eval()
         - 0.5 * super_left(odag_o) - 0.5 * super_right(odag_o);
}

} // namespace

Matrix build_hamiltonian(const ModelParams& p) {
    p.validate();
    const int d = p.effective_dim();
    const Matrix a = annihilation(d);
    const Matrix an = matrix_power(a, p.n);
    const Complex i(0.0, 1.0);
    const Complex ph = std::polar(1.0, p.n * p.theta);
    Matrix h = p.delta * number_operator(d) + i * p.eta * (an * ph - (an.adjoint() * std::conj(ph)));
    return h;
}

Matrix dissipator_apply(const Matrix& jump, const Matrix& rho) {
    if (jump.rows() != rho.rows())
        throw dimension_error("dissipator_apply: dimension mismatch");
    Matrix odag_o = jump.adjoint() * jump;
    return jump * rho * jump.adjoint() - 0.5 * (odag_o * rho + rho * odag_o);
}

Matrix generator_action(const ModelParams& p, const Matrix& rho) {
    const int d = static_cast<int>(rho.rows());
    ModelParams q = p;
    q.dim = d;
    const Matrix h = build_hamiltonian(q);
    const Matrix a = annihilation(d);
    const Complex i(0.0, 1.0);
    Matrix out = -i * (h * rho - rho * h);
    if (p.gamma1 > 0) out += p.gamma1 * dissipator_apply(a, rho);
    if (p.gamma_m > 0) out += p.gamma_m * dissipator_apply(matrix_power(a, p.m), rho);
    return out;
}

Liouvillian build_liouvillian_general(const ModelParams& p) {
    p.validate();
    const int d = p.effective_dim();
    ModelParams q = p;
    q.dim = d;
    const Matrix h = build_hamiltonian(q);
    const Matrix a = annihilation(d);
    const Complex i(0.0, 1.0);
    Matrix L = -i * (super_left(h) - super_right(h));
    if (p.gamma1 > 0) L += p.gamma1 * dissipator_superop(a);
    if (p.gamma_m > 0) L += p.gamma_m * dissipator_superop(matrix_power(a, p.m));
    return Liouvillian{q, std::move(L), LiouvForm::general};
}

Liouvillian build_liouvillian_shifted(const ModelParams& p) {
    p.validate();
    if (p.m != p.n)
        throw regime_error("shifted form requires m = n");
    if (p.gamma_m <= 0)
        throw config_error("shifted form: gamma_n must be > 0");
    const int d = p.effective_dim();
    ModelParams q = p;
    q.dim = d;
    const Matrix a = annihilation(d);
    const Complex i(0.0, 1.0);
    const Complex beta_n = 2.0 * p.eta * std::polar(1.0, p.n * p.theta) / p.gamma_m;
    Matrix jump = matrix_power(a, p.n) - beta_n * Matrix::Identity(d, d);
    Matrix L = -i * p.delta * (super_left(number_operator(d)) - super_right(number_operator(d)));
    if (p.gamma1 > 0) L += p.gamma1 * dissipator_superop(a);
    L += p.gamma_m * dissipator_superop(jump);
    return Liouvillian{q, std::move(L), LiouvForm::shifted};
}

double lobe_amplitude(const ModelParams& p) {
    p.validate();
    if (p.gamma_m <= 0) throw config_error("lobe_amplitude: gamma_m must be > 0");
    if (p.eta <= 0) throw config_error("lobe_amplitude: eta must be > 0");
    if (p.n >= 2 * p.m)
        throw regime_error("lobe_amplitude: requires n < 2m (n = " + std::to_string(p.n) +
                           ", m = " + std::to_string(p.m) + ")");
    const double expo = 1.0 / double(2 * p.m - p.n);
    return std::pow(2.0 * p.n * p.eta / (p.m * p.gamma_m), expo);
}

Matrix number_rotation(int dim, double phi) {
    Matrix u = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) u(k, k) = std::polar(1.0, phi * k);
    return u;
}

Matrix rotation_superop(int dim, double phi) {
    Matrix u = number_rotation(dim, phi);
    return Eigen::kroneckerProduct(u.conjugate(), u);
}

std::vector<std::vector<int>> charge_sectors(int dim, int n) {
    if (n < 1) throw config_error("charge_sectors: n must be >= 1");
    std::vector<std::vector<int>> sectors(n);
    for (int c = 0; c < dim; ++c)
        for (int r = 0; r < dim; ++r)
            sectors[((r - c) % n + n) % n].push_back(c * dim + r);
    return sectors;
}

} // namespace qam
