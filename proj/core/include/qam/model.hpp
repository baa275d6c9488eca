#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace qam {

// Physical parameters of the driven-dissipative oscillator. All rates are
// expressed in units of gamma1; the convention throughout is gamma1 = 1,
// delta = 0.4, theta = 0 unless a config overrides them.
struct ModelParams {
    int n = 4;           // drive order
    int m = 4;           // dissipation order
    double delta = 0.4;  // detuning
    double eta = 0.0;    // drive strength
    double theta = 0.0;  // drive phase
    double gamma1 = 1.0; // linear damping rate
    double gamma_m = 0.0;// nonlinear damping rate
    int dim = 0;         // Fock truncation; 0 = derive from lobe amplitude

    // Throws config_error on invalid combinations.
    void validate() const;

    // Truncation actually used: dim if set, else default_dim(lobe amplitude).
    int effective_dim() const;

    bool has(const std::string& name) const;
    double get(const std::string& name) const;
    void set(const std::string& name, double value);
};

void to_json(nlohmann::json& j, const ModelParams& p);
void from_json(const nlohmann::json& j, ModelParams& p);

} // namespace qam
