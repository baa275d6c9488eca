#pragma once

#include "qam/metastable.hpp"
#include "qam/spectral.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qam {

enum class PovmKind { ambiguous_theoretical, ambiguous_numerical, unambiguous };

const char* povm_kind_name(PovmKind k);

struct Povm {
    PovmKind kind;
    std::vector<Matrix> elements;  // n lobe elements; unambiguous carries Pi_? last
    bool has_inconclusive = false;
    double clipped_mass = 0.0;

    int lobe_elements() const {
        return static_cast<int>(elements.size()) - (has_inconclusive ? 1 : 0);
    }
};

// Phase-sector POVM: P_j = (1/pi) \int_sector |alpha><alpha| d^2 alpha over
// the sector of half-width pi/n centered on lobe j. Closed form in the Fock
// basis, Gamma functions evaluated in log space.
Povm ambiguous_povm_theoretical(int dim, int n, double theta);

// POVM from the dual functionals of the metastable phases: the affine maps
// giving p_l, spectrally clipped to [0,1] and completed back to a resolution
// of the identity by sharing the residual proportionally to element traces.
Povm ambiguous_povm_numerical(const MetastableManifold& man);

// Lobe projectors plus inconclusive element Pi_? = 1 - sum_j Pi_j.
Povm unambiguous_povm(const std::vector<DensityMatrix>& lobes);

// Index of the trace-distance-nearest lobe; ties resolved to the lowest index.
int classify(const DensityMatrix& rho0, const std::vector<DensityMatrix>& lobes);

// F(beta) = |<beta_j|beta_{j+1}>|^2 = exp(-4 beta^2 sin^2(pi/n)).
double lobe_fidelity(double beta, int n);

// Fock level where the Poisson(beta^2) pmf comes closest to epsilon,
// scanning from the distribution mode upward. beta = 0 gives 1.
int effective_dimension(double beta, double epsilon = 1e-9);

struct CapacityPoint {
    int n = 0;
    double beta = 0.0;
    int l_max = 1;
    double fidelity = 0.0;
    double alpha_c = 0.0;
    double alpha_tilde = 0.0;
};

std::vector<CapacityPoint> capacity_curve(int n, const std::vector<double>& beta_grid,
                                          double epsilon = 1e-9);

struct RetrievalRecord {
    int trial = 0;
    Complex alpha0;
    int k_true = 0;   // geometric sector of the clue
    int k_hat = 0;    // trace-distance classification
    // p_click[strategy][time]
    std::vector<std::vector<double>> p_click;
};

struct RetrievalResult {
    std::vector<double> times;
    std::vector<std::string> strategy_names;
    // success probability P_s(t) and its standard error, per strategy
    std::vector<std::vector<double>> p_success;
    std::vector<std::vector<double>> std_error;
    std::vector<RetrievalRecord> records;
};

// Monte Carlo retrieval experiment: per trial, a coherent clue with
// amplitude uniform on [0, 2 beta] and phase uniform on [0, 2 pi) evolves
// under the full spectral propagator; each POVM's element k_hat is read out
// at every time. P_s(t) averages the per-lobe group means. Reproducible:
// trial i draws from its own counter-derived stream.
RetrievalResult retrieval_experiment(const SpectralDecomposition& dec,
                                     const std::vector<Povm>& povms, int trials,
                                     const std::vector<double>& times,
                                     std::uint64_t seed, double beta);

} // namespace qam
