#include "qam/metastable.hpp"
#include "qam/errors.hpp"

#include <Eigen/LU>
#include <cmath>

namespace qam {

std::vector<std::pair<double, double>> extreme_coefficients(const SpectralDecomposition& dec,
                                                            int n) {
    if (dec.herm_count() < n)
        throw config_error("extreme_coefficients: decomposition retains too few hermitized modes");
    std::vector<std::pair<double, double>> out;
    for (int j = 1; j < n; ++j) {
        const Matrix& L = dec.herm_left[j];
        if ((L - L.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
            throw solver_error("extreme_coefficients: left mode " + std::to_string(j + 1) +
                               " not Hermitian after hermitization");
        Eigen::SelfAdjointEigenSolver<Matrix> es(L, Eigen::EigenvaluesOnly);
        out.emplace_back(es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff());
    }
    return out;
}

MetastableManifold build_phases(const SpectralDecomposition& dec, int n) {
    if (n < 2) throw config_error("build_phases: n must be >= 2");
    if (dec.herm_count() < n)
        throw config_error("build_phases: need at least n hermitized modes");

    const Timescales ts = timescales(dec, n + 1);
    const double gap = ts.gap_ratio(n);
    if (gap < 2.0)
        throw regime_error("build_phases: gap_ratio(" + std::to_string(n) + ") = " +
                           std::to_string(gap) + " < 2, no metastable manifold");

    MetastableManifold man;
    man.n = n;
    man.dim = dec.dim;
    man.steady = dec.steady;
    man.herm_left.assign(dec.herm_left.begin(), dec.herm_left.begin() + n);
    man.herm_right.assign(dec.herm_right.begin(), dec.herm_right.begin() + n);
    man.lobe_beta = lobe_amplitude(dec.params);

    // Coefficients of the theoretical lobes in the dual basis. In the
    // orientation the construction fixes implicitly, these realize the
    // extreme-coefficient sign patterns; the column centering below makes
    // the manifold-sum identity exact.
    const auto lobes = lobe_states(dec.dim, man.lobe_beta, n, dec.params.theta);
    Eigen::MatrixXd C(n, n - 1);
    for (int l = 0; l < n; ++l)
        for (int j = 1; j < n; ++j)
            C(l, j - 1) = (dec.herm_left[j].adjoint() * lobes[l].matrix()).trace().real();
    C.rowwise() -= C.colwise().mean();

    man.coeffs = C;
    man.phases.reserve(n);
    for (int l = 0; l < n; ++l) {
        Matrix mu = dec.steady;
        for (int j = 1; j < n; ++j) mu += C(l, j - 1) * dec.herm_right[j];
        const double tr_dev = std::abs(mu.trace() - Complex(1.0, 0.0));
        if (tr_dev > 1e-8)
            throw solver_error("build_phases: phase trace deviates by " + std::to_string(tr_dev));
        man.phases.push_back(std::move(mu));
    }

    Matrix mean = Matrix::Zero(dec.dim, dec.dim);
    for (const Matrix& mu : man.phases) mean += mu / double(n);
    if (trace_distance(mean, dec.steady) > 1e-6)
        throw solver_error("build_phases: manifold-sum identity violated");

    // Dual system: p = M^{-1} (1, b_2, .., b_n) with M = [ones; C^T].
    Eigen::MatrixXd M(n, n);
    M.row(0).setOnes();
    M.block(1, 0, n - 1, n) = C.transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible())
        throw solver_error("build_phases: singular dual system (degenerate phases)");
    man.dual = lu.inverse();
    return man;
}

Eigen::VectorXd quasiprobabilities(const MetastableManifold& man, const Matrix& rho) {
    if (rho.rows() != man.dim)
        throw dimension_error("quasiprobabilities: dimension mismatch");
    Eigen::VectorXd b(man.n);
    b(0) = rho.trace().real();
    for (int j = 1; j < man.n; ++j)
        b(j) = (man.herm_left[j].adjoint() * rho).trace().real();
    return man.dual * b;
}

Eigen::VectorXd quasiprobabilities(const MetastableManifold& man, const DensityMatrix& rho) {
    return quasiprobabilities(man, rho.matrix());
}

Matrix manifold_state(const MetastableManifold& man, const SpectralDecomposition& dec,
                      const Matrix& rho0, double t) {
    Matrix rho_t = man.steady;
    const Vector v0 = vectorize(rho0);
    for (int j = 1; j < man.n; ++j) {
        const Complex c = dec.left_vecs.col(j).dot(v0);
        const Complex w = c * std::exp(dec.eigenvalues[j] * t);
        rho_t += unvectorize((w * dec.right_vecs.col(j)).eval(), dec.dim);
    }
    return 0.5 * (rho_t + rho_t.adjoint());
}

std::vector<Eigen::VectorXd> evolve_in_manifold(const MetastableManifold& man,
                                                const SpectralDecomposition& dec,
                                                const Matrix& rho0,
                                                const std::vector<double>& times) {
    for (double t : times)
        if (t < 0) throw config_error("evolve_in_manifold: times must be >= 0");
    std::vector<Eigen::VectorXd> out;
    out.reserve(times.size());
    for (double t : times)
        out.push_back(quasiprobabilities(man, manifold_state(man, dec, rho0, t)));
    return out;
}

} // namespace qam
