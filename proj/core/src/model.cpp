#include "qam/model.hpp"
#include "qam/errors.hpp"
#include "qam/fock.hpp"
#include "qam/liouvillian.hpp"

#include <nlohmann/json.hpp>

namespace qam {

void ModelParams::validate() const {
    if (n < 1) throw config_error("model.n must be >= 1");
    if (m < 1) throw config_error("model.m must be >= 1");
    if (eta < 0) throw config_error("model.eta must be >= 0");
    if (gamma1 < 0) throw config_error("model.gamma1 must be >= 0");
    if (gamma_m < 0) throw config_error("model.gamma_m must be >= 0");
    if (dim != 0 && dim < 2) throw config_error("model.dim must be 0 (auto) or >= 2");
    if (!std::isfinite(delta) || !std::isfinite(eta) || !std::isfinite(theta) ||
        !std::isfinite(gamma1) || !std::isfinite(gamma_m))
        throw config_error("model parameters must be finite");
}

int ModelParams::effective_dim() const {
    if (dim != 0) return dim;
    double beta = 0.0;
    if (eta > 0 && gamma_m > 0 && n < 2 * m) {
        ModelParams p = *this;
        beta = lobe_amplitude(p);
    }
    return std::max(default_dim(beta), 16);
}

bool ModelParams::has(const std::string& name) const {
    return name == "delta" || name == "eta" || name == "theta" ||
           name == "gamma1" || name == "gamma_m";
}

double ModelParams::get(const std::string& name) const {
    if (name == "delta") return delta;
    if (name == "eta") return eta;
    if (name == "theta") return theta;
    if (name == "gamma1") return gamma1;
    if (name == "gamma_m") return gamma_m;
    throw config_error("unknown model parameter '" + name + "'");
}

void ModelParams::set(const std::string& name, double value) {
    if (name == "delta") delta = value;
    else if (name == "eta") eta = value;
    else if (name == "theta") theta = value;
    else if (name == "gamma1") gamma1 = value;
    else if (name == "gamma_m") gamma_m = value;
    else throw config_error("unknown model parameter '" + name + "'");
}

void to_json(nlohmann::json& j, const ModelParams& p) {
    j = nlohmann::json{{"n", p.n},         {"m", p.m},
                       {"delta", p.delta}, {"eta", p.eta},
                       {"theta", p.theta}, {"gamma1", p.gamma1},
                       {"gamma_m", p.gamma_m}, {"dim", p.dim}};
}

void from_json(const nlohmann::json& j, ModelParams& p) {
    if (!j.is_object()) throw config_error("model: expected a JSON object");
    static const char* known[] = {"n", "m", "delta", "eta", "theta",
                                  "gamma1", "gamma_m", "dim"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || (it.key() == k);
        if (!ok) throw config_error("model: unknown key '" + it.key() + "'");
    }
    p = ModelParams{};
    if (j.contains("n")) j.at("n").get_to(p.n);
    if (j.contains("m")) j.at("m").get_to(p.m);
    if (j.contains("delta")) j.at("delta").get_to(p.delta);
    if (j.contains("eta")) j.at("eta").get_to(p.eta);
    if (j.contains("theta")) j.at("theta").get_to(p.theta);
    if (j.contains("gamma1")) j.at("gamma1").get_to(p.gamma1);
    if (j.contains("gamma_m")) j.at("gamma_m").get_to(p.gamma_m);
    if (j.contains("dim")) j.at("dim").get_to(p.dim);
    p.validate();
}

} // namespace qam
