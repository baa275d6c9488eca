#include "qam/memory.hpp"
#include "qam/errors.hpp"
#include "qam/rng.hpp"

#include <algorithm>
#include <cmath>

namespace qam {

const char* povm_kind_name(PovmKind k) {
    switch (k) {
        case PovmKind::ambiguous_theoretical: return "ambiguous_theoretical";
        case PovmKind::ambiguous_numerical: return "ambiguous_numerical";
        case PovmKind::unambiguous: return "unambiguous";
    }
    return "?";
}

Povm ambiguous_povm_theoretical(int dim, int n, double theta) {
    if (dim < 2) throw dimension_error("ambiguous_povm_theoretical: dim must be >= 2");
    if (n < 1) throw config_error("ambiguous_povm_theoretical: n must be >= 1");
    Eigen::VectorXd lgam_half(dim); // (1/2) log k!
    lgam_half[0] = 0.0;
    for (int k = 1; k < dim; ++k) lgam_half[k] = lgam_half[k - 1] + 0.5 * std::log(double(k));

    Povm povm;
    povm.kind = PovmKind::ambiguous_theoretical;
    for (int j = 1; j <= n; ++j) {
        const double phi_j = (2.0 * j + 1.0) * M_PI / n + theta;
        Matrix P = Matrix::Identity(dim, dim) / double(n);
        for (int k = 0; k < dim; ++k) {
            for (int l = 0; l < dim; ++l) {
                if (k == l) continue;
                const int q = k - l;
                const double s = std::sin(q * M_PI / n);
                if (s == 0.0) continue;
                // (1/pi) Gamma((k+l)/2+1) / sqrt(k! l!) e^{i q phi_j} sin(q pi/n)/q
                const double logmag =
                    std::lgamma(0.5 * (k + l) + 1.0) - lgam_half[k] - lgam_half[l];
                P(k, l) += std::polar(std::exp(logmag) / M_PI * s / q, q * phi_j);
            }
        }
        povm.elements.push_back(std::move(P));
    }
    return povm;
}

namespace {

Matrix clip_spectrum(const Matrix& p, double lo, double hi, double& clipped) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (p + p.adjoint()));
    Eigen::VectorXd w = es.eigenvalues();
    for (int i = 0; i < w.size(); ++i) {
        const double c = std::clamp(w[i], lo, hi);
        clipped += std::abs(w[i] - c);
        w[i] = c;
    }
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace

Povm ambiguous_povm_numerical(const MetastableManifold& man) {
    const int n = man.n;
    const int d = man.dim;
    Povm povm;
    povm.kind = PovmKind::ambiguous_numerical;

    // Dual functionals as operators: p_l(rho) = tr(Lambda_l rho) with
    // Lambda_l = dual(l,0) I + sum_j dual(l,j) L_{j+1}. They resolve the
    // identity exactly; clipping to [0,1] then requires a completion step.
    double clipped = 0.0;
    for (int l = 0; l < n; ++l) {
        Matrix lambda = man.dual(l, 0) * Matrix::Identity(d, d);
        for (int j = 1; j < n; ++j) lambda += man.dual(l, j) * man.herm_left[j];
        povm.elements.push_back(clip_spectrum(lambda, 0.0, 1.0, clipped));
    }
    povm.clipped_mass = clipped;
    if (clipped > 0.1)
        throw solver_error("ambiguous_povm_numerical: clipped mass " + std::to_string(clipped) +
                           " > 0.1 (ill-conditioned manifold)");

    Matrix residual = Matrix::Identity(d, d);
    for (const Matrix& p : povm.elements) residual -= p;
    double share_sum = 0.0;
    for (const Matrix& p : povm.elements) share_sum += p.trace().real();
    for (Matrix& p : povm.elements) p += residual * (p.trace().real() / share_sum);
    return povm;
}

Povm unambiguous_povm(const std::vector<DensityMatrix>& lobes) {
    if (lobes.empty()) throw config_error("unambiguous_povm: need at least one lobe");
    const int d = lobes.front().dim();
    for (std::size_t i = 0; i < lobes.size(); ++i)
        for (std::size_t j = i + 1; j < lobes.size(); ++j)
            if ((lobes[i].matrix() * lobes[j].matrix()).trace().real() > 0.1)
                warnings::emit("unambiguous_povm: lobe overlap above 0.1; Pi_? will be clipped");

    Povm povm;
    povm.kind = PovmKind::unambiguous;
    povm.has_inconclusive = true;
    Matrix inconclusive = Matrix::Identity(d, d);
    for (const auto& lobe : lobes) {
        povm.elements.push_back(lobe.matrix());
        inconclusive -= lobe.matrix();
    }
    double clipped = 0.0;
    povm.elements.push_back(clip_spectrum(inconclusive, 0.0, 1.0, clipped));
    povm.clipped_mass = clipped;
    if (clipped > 0.05)
        throw regime_error("unambiguous_povm: Pi_? negativity " + std::to_string(clipped) +
                           " beyond clip budget 0.05 (overlapping lobes)");
    // Clipping Pi_? breaks the exact resolution of the identity; restore it
    // symmetrically: E -> S^{-1/2} E S^{-1/2} with S the clipped sum.
    if (clipped > 0.0) {
        Matrix sum = Matrix::Zero(d, d);
        for (const Matrix& e : povm.elements) sum += e;
        Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
        if (es.eigenvalues().minCoeff() <= 0)
            throw solver_error("unambiguous_povm: clipped element sum not positive definite");
        Matrix inv_sqrt = es.eigenvectors() *
                          es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal().toDenseMatrix() *
                          es.eigenvectors().adjoint();
        for (Matrix& e : povm.elements) e = inv_sqrt * e * inv_sqrt;
    }
    return povm;
}

int classify(const DensityMatrix& rho0, const std::vector<DensityMatrix>& lobes) {
    if (lobes.empty()) throw config_error("classify: empty lobe list");
    int best = 0;
    double best_d = trace_distance(rho0, lobes[0]);
    for (std::size_t j = 1; j < lobes.size(); ++j) {
        const double dj = trace_distance(rho0, lobes[j]);
        if (dj < best_d) { // strict: ties keep the lowest index
            best_d = dj;
            best = static_cast<int>(j);
        }
    }
    return best;
}

double lobe_fidelity(double beta, int n) {
    if (n < 2) throw config_error("lobe_fidelity: undefined neighbour for n < 2");
    if (beta < 0) throw config_error("lobe_fidelity: beta must be >= 0");
    const double s = std::sin(M_PI / n);
    return std::exp(-4.0 * beta * beta * s * s);
}

int effective_dimension(double beta, double epsilon) {
    if (beta < 0) throw config_error("effective_dimension: beta must be >= 0");
    if (beta == 0.0) return 1;
    const double lambda = beta * beta;
    // scan the decaying right tail only: the rising left tail can also come
    // close to epsilon but has no truncation meaning
    const int start = static_cast<int>(std::floor(lambda));
    const int stop = start + 400 + static_cast<int>(20 * std::sqrt(lambda));
    double log_lambda = std::log(lambda);
    double lgam = std::lgamma(start + 1.0);
    int best_l = start;
    double best = std::numeric_limits<double>::infinity();
    for (int l = start; l <= stop; ++l) {
        if (l > start) lgam += std::log(double(l));
        const double p = std::exp(-lambda + l * log_lambda - lgam);
        const double dist = std::abs(p - epsilon);
        if (dist < best) {
            best = dist;
            best_l = l;
        }
    }
    return std::max(best_l, 1);
}

std::vector<CapacityPoint> capacity_curve(int n, const std::vector<double>& beta_grid,
                                          double epsilon) {
    std::vector<CapacityPoint> out;
    out.reserve(beta_grid.size());
    for (double b : beta_grid) {
        if (b <= 0) throw config_error("capacity_curve: beta grid must be positive");
        CapacityPoint pt;
        pt.n = n;
        pt.beta = b;
        pt.l_max = effective_dimension(b, epsilon);
        pt.fidelity = lobe_fidelity(b, n);
        pt.alpha_c = double(n) / pt.l_max;
        pt.alpha_tilde = double(n) * (1.0 - pt.fidelity) / pt.l_max;
        out.push_back(pt);
    }
    return out;
}

RetrievalResult retrieval_experiment(const SpectralDecomposition& dec,
                                     const std::vector<Povm>& povms, int trials,
                                     const std::vector<double>& times, std::uint64_t seed,
                                     double beta) {
    if (trials < 1) throw config_error("retrieval_experiment: trials must be >= 1");
    if (povms.empty()) throw config_error("retrieval_experiment: no POVMs given");
    const int d = dec.dim;
    const int n = dec.params.n;
    const int T = static_cast<int>(times.size());
    const int S = static_cast<int>(povms.size());
    const auto lobes = lobe_states(d, beta, n, dec.params.theta);

    RetrievalResult res;
    res.times = times;
    for (const Povm& p : povms) res.strategy_names.push_back(povm_kind_name(p.kind));

    // response of element k on mode j: tr(P_k R_j) = vec(P_k^dag)^H vec(R_j)
    std::vector<Eigen::MatrixXcd> responses(S);
    for (int s = 0; s < S; ++s) {
        const int K = povms[s].lobe_elements();
        responses[s].resize(K, d * d);
        for (int k = 0; k < K; ++k)
            responses[s].row(k) =
                (vectorize(povms[s].elements[k].adjoint()).adjoint() * dec.right_vecs);
    }

    res.records.resize(trials);
#pragma omp parallel for schedule(dynamic)
    for (int tr = 0; tr < trials; ++tr) {
        TrialRng rng(seed, static_cast<std::uint64_t>(tr));
        const double r = rng.uniform(0.0, 2.0 * beta);
        const double phase = rng.uniform(0.0, 2.0 * M_PI);
        const Complex alpha0 = std::polar(r, phase);
        const DensityMatrix rho0 = coherent_state(d, alpha0);

        RetrievalRecord rec;
        rec.trial = tr;
        rec.alpha0 = alpha0;
        rec.k_hat = classify(rho0, lobes);
        // geometric sector of the clue phase
        {
            int best = 0;
            double bestd = 1e300;
            for (int j = 0; j < n; ++j) {
                double diff = std::remainder(phase - lobe_phase(j + 1, n, dec.params.theta),
                                             2.0 * M_PI);
                if (std::abs(diff) < bestd) {
                    bestd = std::abs(diff);
                    best = j;
                }
            }
            rec.k_true = best;
        }

        const Vector c = dec.left_vecs.adjoint() * vectorize(rho0.matrix());
        rec.p_click.assign(S, std::vector<double>(T));
        for (int it = 0; it < T; ++it) {
            Vector w(d * d);
            for (int j = 0; j < d * d; ++j)
                w[j] = c[j] * std::exp(dec.eigenvalues[j] * times[it]);
            for (int s = 0; s < S; ++s) {
                const double pc = (responses[s].row(rec.k_hat) * w).value().real();
                if (pc < -1e-6 || pc > 1.0 + 1e-6)
                    warnings::emit("retrieval: click probability out of range: " +
                                   std::to_string(pc));
                rec.p_click[s][it] = std::clamp(pc, 0.0, 1.0);
            }
        }
        res.records[tr] = std::move(rec);
    }

    // P_s(t) = (1/n) sum_k mean over trials classified to lobe k; empty
    // groups are skipped and the normalization adjusts.
    res.p_success.assign(S, std::vector<double>(T, 0.0));
    res.std_error.assign(S, std::vector<double>(T, 0.0));
    for (int s = 0; s < S; ++s) {
        for (int it = 0; it < T; ++it) {
            double mean_of_groups = 0.0;
            int groups = 0;
            double var_acc = 0.0;
            for (int k = 0; k < n; ++k) {
                double sum = 0.0, sum2 = 0.0;
                int cnt = 0;
                for (const auto& rec : res.records) {
                    if (rec.k_hat != k) continue;
                    sum += rec.p_click[s][it];
                    sum2 += rec.p_click[s][it] * rec.p_click[s][it];
                    ++cnt;
                }
                if (cnt == 0) continue;
                const double gm = sum / cnt;
                mean_of_groups += gm;
                ++groups;
                if (cnt > 1) var_acc += (sum2 / cnt - gm * gm) / (cnt - 1);
            }
            if (groups == 0) continue;
            res.p_success[s][it] = mean_of_groups / groups;
            res.std_error[s][it] = std::sqrt(var_acc) / groups;
        }
    }
    return res;
}

} // namespace qam
