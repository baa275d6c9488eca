#include "qam/fock.hpp"
#include "qam/errors.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <mutex>

namespace qam {

namespace warnings {

namespace {
std::mutex mtx;
Handler handler = nullptr;
}

void set_handler(Handler h) {
    std::lock_guard<std::mutex> lock(mtx);
    handler = std::move(h);
}

void emit(const std::string& message) {
    Handler h;
    {
        std::lock_guard<std::mutex> lock(mtx);
        h = handler;
    }
    if (h) {
        h(message);
    } else {
        std::fputs(("warning: " + message + "\n").c_str(), stderr);
    }
}

} // namespace warnings

DensityMatrix::DensityMatrix(Matrix rho) : mat_(std::move(rho)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 2)
        throw dimension_error("DensityMatrix: need a square matrix with dim >= 2");
    const double tr_dev = std::abs(mat_.trace() - Complex(1.0, 0.0));
    if (tr_dev > trace_tol)
        throw solver_error("DensityMatrix: trace deviates from 1 by " + std::to_string(tr_dev));
    const double herm_dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > herm_tol)
        throw solver_error("DensityMatrix: non-Hermitian by " + std::to_string(herm_dev));
    Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -positivity_tol)
        throw solver_error("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
}

Matrix annihilation(int dim) {
    if (dim < 2) throw dimension_error("annihilation: dim must be >= 2");
    Matrix a = Matrix::Zero(dim, dim);
    for (int k = 0; k + 1 < dim; ++k) a(k, k + 1) = std::sqrt(double(k + 1));
    return a;
}

Matrix creation(int dim) { return annihilation(dim).adjoint(); }

Matrix number_operator(int dim) {
    if (dim < 2) throw dimension_error("number_operator: dim must be >= 2");
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    return n;
}

double truncation_tail(double beta, int dim) {
    const double lambda = beta * beta;
    if (lambda == 0.0) return 0.0;
    // 1 - CDF(dim-1) in linear space; terms are added smallest-first safe enough here
    double cum = 0.0;
    double logp = -lambda; // log pmf at k=0
    for (int k = 0; k < dim; ++k) {
        cum += std::exp(logp);
        logp += std::log(lambda) - std::log(double(k + 1));
    }
    return std::max(0.0, 1.0 - cum);
}

int default_dim(double beta) {
    int d = 2;
    while (truncation_tail(beta, d) >= 1e-9 && d < 4096) ++d;
    d = static_cast<int>(std::ceil(1.2 * d));
    return std::max(d, 2);
}

Vector coherent_vector(int dim, Complex alpha) {
    if (dim < 2) throw dimension_error("coherent_vector: dim must be >= 2");
    Vector v = Vector::Zero(dim);
    const double r = std::abs(alpha);
    if (r == 0.0) {
        v(0) = 1.0;
        return v;
    }
    if (truncation_tail(r, dim) >= 1e-9)
        warnings::emit("coherent state |alpha|=" + std::to_string(r) +
                       " truncated at dim=" + std::to_string(dim) +
                       " with tail above 1e-9");
    const double phase = std::arg(alpha);
    double log_lgamma = 0.0; // log k!
    for (int k = 0; k < dim; ++k) {
        if (k > 0) log_lgamma += std::log(double(k));
        const double logmag = -0.5 * r * r + k * std::log(r) - 0.5 * log_lgamma;
        v(k) = std::exp(logmag) * std::polar(1.0, k * phase);
    }
    v.normalize(); // renormalize after truncation
    return v;
}

DensityMatrix coherent_state(int dim, Complex alpha) {
    Vector v = coherent_vector(dim, alpha);
    return DensityMatrix((v * v.adjoint()).eval());
}

double lobe_phase(int j, int n, double theta) {
    const double two_pi = 2.0 * M_PI;
    double phi = std::fmod(theta + (2.0 * j + 1.0) * M_PI / n, two_pi);
    if (phi < 0) phi += two_pi;
    return phi;
}

std::vector<DensityMatrix> lobe_states(int dim, double beta, int n, double theta) {
    if (n < 1) throw config_error("lobe_states: n must be >= 1");
    if (beta < 0) throw config_error("lobe_states: beta must be >= 0");
    std::vector<DensityMatrix> out;
    out.reserve(n);
    for (int j = 1; j <= n; ++j)
        out.push_back(coherent_state(dim, std::polar(beta, lobe_phase(j, n, theta))));
    return out;
}

double trace_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_error("trace_distance: dimension mismatch");
    Matrix diff = a - b;
    // Hermitian differences (the usual case): singular values = |eigenvalues|
    if ((diff - diff.adjoint()).cwiseAbs().maxCoeff() < 1e-12) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
        return 0.5 * es.eigenvalues().cwiseAbs().sum();
    }
    Eigen::BDCSVD<Matrix> svd(diff);
    return 0.5 * svd.singularValues().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    return trace_distance(a.matrix(), b.matrix());
}

Complex expectation(const Matrix& obs, const Matrix& rho) {
    if (obs.rows() != rho.rows())
        throw dimension_error("expectation: dimension mismatch");
    return (obs * rho).trace();
}

Complex expectation(const Matrix& obs, const DensityMatrix& rho) {
    return expectation(obs, rho.matrix());
}

} // namespace qam
