#pragma once

#include "qam/model.hpp"
#include "qam/spectral.hpp"

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

namespace qam {

struct AxisSpec {
    std::string param;
    double min = 0, max = 0;
    int points = 0;
    bool log = false;

    std::vector<double> values() const;
    void validate(const ModelParams& base) const;
};

struct SweepSpec {
    AxisSpec x, y;
    int record_n = 0; // mode index n for gap_ratio/tau_n; 0 = model n
};

void from_json(const nlohmann::json& j, AxisSpec& a);
void from_json(const nlohmann::json& j, SweepSpec& s);

struct SweepCell {
    int ix = 0, iy = 0;
    double x = 0, y = 0;
    bool ok = false;
    std::string error;
    double tau_n = 0, tau_np1 = 0, gap_ratio = 0;
};

// Grid of spectral gap diagnostics; each cell builds its own Liouvillian and
// solves eigenvalues only. Cells run on a worker pool; any cell failure is
// recorded and the sweep continues.
std::vector<SweepCell> run_phase_diagram(const ModelParams& base, const SweepSpec& sweep,
                                         int threads);

// Bisection on tau_n(param) at otherwise fixed parameters. Truncation is
// re-derived per point unless the base fixes dim.
double find_parameter_for_tau(const ModelParams& base, const std::string& param, int mode_n,
                              double target_tau, double lo, double hi, double rel_tol = 1e-3);

// tau_n at one parameter point (eigenvalues only).
double tau_at(const ModelParams& p, int mode_n);

} // namespace qam
