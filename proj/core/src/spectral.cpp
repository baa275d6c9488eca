#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include "qam/spectral.hpp"
#include "qam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

extern "C" void openblas_set_num_threads(int);

namespace qam {

void set_blas_threads(int n) { openblas_set_num_threads(std::max(1, n)); }

namespace {

struct RawEig {
    Eigen::VectorXcd values;
    Matrix vl, vr;
};

RawEig zgeev(Matrix a, bool vectors) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    RawEig out;
    out.values.resize(n);
    if (vectors) {
        out.vl.resize(n, n);
        out.vr.resize(n, n);
    }
    lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, vectors ? 'V' : 'N', vectors ? 'V' : 'N', n,
        a.data(), n, out.values.data(),
        vectors ? out.vl.data() : nullptr, n,
        vectors ? out.vr.data() : nullptr, n);
    if (info != 0)
        throw solver_error("zgeev failed with info = " + std::to_string(info));
    return out;
}

// Sort permutation: Re descending; within near-equal Re (relative tie_tol),
// ascending |Im|, then +Im before -Im.
std::vector<int> sort_order(const Eigen::VectorXcd& lam) {
    const int n = static_cast<int>(lam.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return lam[a].real() > lam[b].real();
    });
    double scale = 0.0;
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(lam[j]));
    const double tol = 1e-9 * std::max(scale, 1e-300);
    int i = 0;
    while (i < n) {
        int j = i + 1;
        while (j < n && std::abs(lam[idx[j]].real() - lam[idx[i]].real()) <= tol) ++j;
        std::stable_sort(idx.begin() + i, idx.begin() + j, [&](int a, int b) {
            const double ia = std::abs(lam[a].imag()), ib = std::abs(lam[b].imag());
            if (std::abs(ia - ib) > tol) return ia < ib;
            return lam[a].imag() > lam[b].imag();
        });
        i = j;
    }
    return idx;
}

// Phase-rotate M so it is proportional to a Hermitian matrix with positive
// tr(M^2), then symmetrize.
Matrix phase_fixed_hermitian(const Matrix& m) {
    const Complex t2 = (m * m).trace();
    const double phi = 0.5 * std::arg(t2);
    Matrix rotated = m * std::polar(1.0, -phi);
    return 0.5 * (rotated + rotated.adjoint());
}

} // namespace

SpectralDecomposition decompose(const Liouvillian& L, const DecomposeOptions& opt) {
    const int d = L.dim();
    const int N = d * d;
    const int n_sym = L.params.n;

    SpectralDecomposition dec;
    dec.params = L.params;
    dec.dim = d;
    dec.eigenvalues.resize(N);
    const bool vectors = !opt.eigenvalues_only;
    if (vectors) {
        dec.right_vecs = Matrix::Zero(N, N);
        dec.left_vecs = Matrix::Zero(N, N);
    }

    if (opt.monolithic || n_sym < 2) {
        RawEig r = zgeev(L.matrix, vectors);
        dec.eigenvalues = r.values;
        if (vectors) {
            dec.right_vecs = std::move(r.vr);
            dec.left_vecs = std::move(r.vl);
        }
    } else {
        // The generator only couples Fock charges (row-col) equal mod n, so
        // the spectrum splits exactly into n dense blocks.
        int pos = 0;
        for (const auto& ids : charge_sectors(d, n_sym)) {
            const int s = static_cast<int>(ids.size());
            Matrix sub(s, s);
            for (int j = 0; j < s; ++j)
                for (int i = 0; i < s; ++i)
                    sub(i, j) = L.matrix(ids[i], ids[j]);
            RawEig r = zgeev(std::move(sub), vectors);
            for (int j = 0; j < s; ++j) {
                dec.eigenvalues[pos + j] = r.values[j];
                if (vectors)
                    for (int i = 0; i < s; ++i) {
                        dec.right_vecs(ids[i], pos + j) = r.vr(i, j);
                        dec.left_vecs(ids[i], pos + j) = r.vl(i, j);
                    }
            }
            pos += s;
        }
    }

    const std::vector<int> order = sort_order(dec.eigenvalues);
    {
        Eigen::VectorXcd lam(N);
        for (int j = 0; j < N; ++j) lam[j] = dec.eigenvalues[order[j]];
        dec.eigenvalues = std::move(lam);
        if (vectors) {
            Matrix vr(N, N), vl(N, N);
            for (int j = 0; j < N; ++j) {
                vr.col(j) = dec.right_vecs.col(order[j]);
                vl.col(j) = dec.left_vecs.col(order[j]);
            }
            dec.right_vecs = std::move(vr);
            dec.left_vecs = std::move(vl);
        }
    }

    double scale = 0.0;
    for (int j = 0; j < N; ++j) scale = std::max(scale, std::abs(dec.eigenvalues[j]));
    const double zero_tol = 1e-8 * std::max(scale, 1e-300);
    if (std::abs(dec.eigenvalues[0]) > zero_tol)
        throw solver_error("decompose: no zero mode found; |lambda_1| = " +
                           std::to_string(std::abs(dec.eigenvalues[0])));
    int n_zero = 0;
    for (int j = 0; j < N; ++j)
        if (std::abs(dec.eigenvalues[j]) <= zero_tol) ++n_zero;
    if (n_zero > 1) {
        if (L.params.gamma1 > 0)
            throw solver_error("decompose: unexpected " + std::to_string(n_zero) +
                               "-fold degenerate zero mode with gamma1 > 0");
        dec.zero_degenerate = true;
        warnings::emit("decompose: " + std::to_string(n_zero) +
                       " near-zero eigenvalues (expected at gamma1 = 0)");
    }

    if (!vectors) return dec;

    // Biorthonormalize: zgeev pairs left/right columns one-to-one.
    for (int j = 0; j < N; ++j) {
        const Complex t = dec.left_vecs.col(j).dot(dec.right_vecs.col(j));
        if (std::abs(t) < 1e-14)
            warnings::emit("decompose: near-defective mode " + std::to_string(j));
        dec.left_vecs.col(j) /= std::conj(t);
    }

    // Steady state: zero-mode eigenmatrix, hermitized, trace-normalized,
    // spectrum clipped to enforce positivity.
    {
        Matrix ss = unvectorize(dec.right_vecs.col(0), d);
        ss /= ss.trace();
        ss = 0.5 * (ss + ss.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(ss);
        Eigen::VectorXd w = es.eigenvalues();
        double clipped = 0.0;
        for (int i = 0; i < w.size(); ++i)
            if (w[i] < 0) {
                clipped += -w[i];
                w[i] = 0.0;
            }
        dec.clipped_mass = clipped;
        if (clipped > 1e-6 && !dec.zero_degenerate)
            throw solver_error("steady state clipped mass " + std::to_string(clipped) +
                               " exceeds budget 1e-6");
        if (clipped > 1e-6)
            warnings::emit("steady-state clipped mass " + std::to_string(clipped) +
                           " (degenerate zero manifold)");
        Matrix pos = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
        dec.steady = pos / pos.trace().real();
    }

    // Hermitized low block per the eigenmode symmetrization rules:
    // real modes are phase-fixed and symmetrized; conjugate pairs are
    // replaced by (R + R^dag)/2 and (R - R^dag)/(2i) with the partner forced
    // to the exact adjoint first; left modes rescaled to tr(L^dag R) = 1.
    int k = opt.hermitize_modes < 0 ? L.params.n : opt.hermitize_modes;
    k = std::min(k, N);
    dec.herm_left.push_back(Matrix::Identity(d, d));
    dec.herm_right.push_back(dec.steady);
    const double im_tol = 1e-9 * std::max(scale, 1e-300);
    int j = 1;
    while (j < k) {
        const Complex lam = dec.eigenvalues[j];
        if (std::abs(lam.imag()) <= im_tol) {
            Matrix R = phase_fixed_hermitian(unvectorize(dec.right_vecs.col(j), d));
            Matrix Lm = phase_fixed_hermitian(unvectorize(dec.left_vecs.col(j), d));
            const Complex t = (Lm.adjoint() * R).trace();
            if (std::abs(t) < 1e-12)
                throw solver_error("hermitization degenerated for mode " + std::to_string(j));
            Lm /= std::conj(t);
            dec.herm_right.push_back(std::move(R));
            dec.herm_left.push_back(std::move(Lm));
            ++j;
        } else {
            if (j + 1 >= N || std::abs(dec.eigenvalues[j + 1] - std::conj(lam)) >
                                  1e-6 * std::max(std::abs(lam), 1.0))
                throw solver_error("conjugate partner missing for mode " + std::to_string(j));
            const Matrix R = unvectorize(dec.right_vecs.col(j), d);
            const Matrix Lm = unvectorize(dec.left_vecs.col(j), d);
            Matrix Rc = 0.5 * (R + R.adjoint());
            Matrix Rs = (R - R.adjoint()) / Complex(0.0, 2.0);
            Matrix Lc = 0.5 * (Lm + Lm.adjoint());
            Matrix Ls = (Lm - Lm.adjoint()) / Complex(0.0, 2.0);
            const Complex tc = (Lc.adjoint() * Rc).trace();
            const Complex ts = (Ls.adjoint() * Rs).trace();
            if (std::abs(tc) < 1e-12 || std::abs(ts) < 1e-12)
                throw solver_error("pair hermitization degenerated at mode " + std::to_string(j));
            Lc /= std::conj(tc);
            Ls /= std::conj(ts);
            dec.pair_starts.push_back(static_cast<int>(dec.herm_right.size()));
            dec.herm_right.push_back(std::move(Rc));
            dec.herm_right.push_back(std::move(Rs));
            dec.herm_left.push_back(std::move(Lc));
            dec.herm_left.push_back(std::move(Ls));
            j += 2;
        }
    }
    return dec;
}

DensityMatrix steady_state(const Liouvillian& L) {
    if (L.params.gamma1 <= 0)
        throw regime_error("steady_state: gamma1 must be > 0 for a unique steady state");
    DecomposeOptions opt;
    opt.hermitize_modes = 1;
    SpectralDecomposition dec = decompose(L, opt);
    return dec.steady_state();
}

Matrix asymptotic_projection(const SpectralDecomposition& dec, const Matrix& rho0,
                             double re_cutoff) {
    if (rho0.rows() != dec.dim)
        throw dimension_error("asymptotic_projection: dimension mismatch");
    const int N = dec.dim * dec.dim;
    const Vector v0 = vectorize(rho0);
    Vector acc = Vector::Zero(N);
    for (int j = 0; j < N; ++j) {
        if (std::abs(dec.eigenvalues[j].real()) > re_cutoff) continue;
        acc += dec.left_vecs.col(j).dot(v0) * dec.right_vecs.col(j);
    }
    Matrix out = unvectorize(acc, dec.dim);
    out = 0.5 * (out + out.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(out);
    Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
    Matrix pos = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    const double tr = pos.trace().real();
    if (tr <= 0)
        throw solver_error("asymptotic_projection: vanishing trace");
    return pos / tr;
}

double Timescales::gap_ratio(int n) const {
    if (n + 1 >= static_cast<int>(tau.size()))
        throw config_error("gap_ratio: not enough timescales computed");
    if (std::isinf(tau[n]) && std::isinf(tau[n + 1])) return 1.0;
    if (std::isinf(tau[n])) return std::numeric_limits<double>::infinity();
    return tau[n] / tau[n + 1];
}

Timescales timescales(const SpectralDecomposition& dec, int count) {
    Timescales ts;
    const int N = static_cast<int>(dec.eigenvalues.size());
    const int upto = count > 0 ? std::min(count + 1, N) : N;
    ts.tau.assign(upto + 1, std::numeric_limits<double>::quiet_NaN());
    for (int j = 2; j <= upto; ++j) {
        const double re = dec.eigenvalues[j - 1].real();
        if (re >= 0.0) {
            ts.tau[j] = std::numeric_limits<double>::infinity();
            ts.has_infinite = true;
        } else {
            ts.tau[j] = -1.0 / re;
        }
    }
    return ts;
}

double eigen_residual(const Liouvillian& L, const SpectralDecomposition& dec, int k) {
    const double norm = L.matrix.norm();
    double worst = 0.0;
    for (int j = 0; j < k; ++j) {
        const Vector r = dec.right_vecs.col(j);
        const double res = (L.matrix * r - dec.eigenvalues[j] * r).norm() / r.norm();
        worst = std::max(worst, res / norm);
    }
    return worst;
}

} // namespace qam
