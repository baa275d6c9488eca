#include "qam/sweep.hpp"
#include "qam/errors.hpp"
#include "qam/liouvillian.hpp"

#include <nlohmann/json.hpp>
#include <omp.h>

#include <cmath>

namespace qam {

std::vector<double> AxisSpec::values() const {
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : double(i) / (points - 1);
        v[i] = log ? min * std::pow(max / min, f) : min + (max - min) * f;
    }
    return v;
}

void AxisSpec::validate(const ModelParams& base) const {
    if (points < 2) throw config_error("sweep axis '" + param + "': points must be >= 2");
    if (!base.has(param)) throw config_error("sweep axis: unknown parameter '" + param + "'");
    if (log && (min <= 0 || max <= 0))
        throw config_error("sweep axis '" + param + "': log scale needs positive range");
    if (!(min < max)) throw config_error("sweep axis '" + param + "': need min < max");
}

void from_json(const nlohmann::json& j, AxisSpec& a) {
    static const char* known[] = {"param", "min", "max", "points", "scale"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw config_error("sweep axis: unknown key '" + it.key() + "'");
    }
    j.at("param").get_to(a.param);
    j.at("min").get_to(a.min);
    j.at("max").get_to(a.max);
    j.at("points").get_to(a.points);
    a.log = j.value("scale", "linear") == std::string("log");
    if (j.contains("scale")) {
        const std::string s = j.at("scale");
        if (s != "linear" && s != "log")
            throw config_error("sweep axis: scale must be 'linear' or 'log'");
    }
}

void from_json(const nlohmann::json& j, SweepSpec& s) {
    static const char* known[] = {"x", "y", "record_n"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw config_error("sweep: unknown key '" + it.key() + "'");
    }
    j.at("x").get_to(s.x);
    j.at("y").get_to(s.y);
    s.record_n = j.value("record_n", 0);
}

double tau_at(const ModelParams& p, int mode_n) {
    const Liouvillian L = build_liouvillian_general(p);
    DecomposeOptions opt;
    opt.eigenvalues_only = true;
    const SpectralDecomposition dec = decompose(L, opt);
    const double re = dec.eigenvalues[mode_n - 1].real();
    if (re >= 0) return std::numeric_limits<double>::infinity();
    return -1.0 / re;
}

std::vector<SweepCell> run_phase_diagram(const ModelParams& base, const SweepSpec& sweep,
                                         int threads) {
    sweep.x.validate(base);
    sweep.y.validate(base);
    if (sweep.x.param == sweep.y.param)
        throw config_error("sweep: x and y must use different parameters");
    const int n_mode = sweep.record_n > 0 ? sweep.record_n : base.n;

    const auto xs = sweep.x.values();
    const auto ys = sweep.y.values();
    std::vector<SweepCell> cells(xs.size() * ys.size());

    if (threads > 0) omp_set_num_threads(threads);
    set_blas_threads(1);
#pragma omp parallel for schedule(dynamic) collapse(2)
    for (int iy = 0; iy < static_cast<int>(ys.size()); ++iy) {
        for (int ix = 0; ix < static_cast<int>(xs.size()); ++ix) {
            SweepCell& cell = cells[iy * xs.size() + ix];
            cell.ix = ix;
            cell.iy = iy;
            cell.x = xs[ix];
            cell.y = ys[iy];
            try {
                ModelParams p = base;
                p.set(sweep.x.param, xs[ix]);
                p.set(sweep.y.param, ys[iy]);
                const Liouvillian L = build_liouvillian_general(p);
                DecomposeOptions opt;
                opt.eigenvalues_only = true;
                const SpectralDecomposition dec = decompose(L, opt);
                const Timescales ts = timescales(dec, n_mode + 1);
                cell.tau_n = ts.tau[n_mode];
                cell.tau_np1 = ts.tau[n_mode + 1];
                cell.gap_ratio = ts.gap_ratio(n_mode);
                cell.ok = true;
            } catch (const std::exception& e) {
                cell.ok = false;
                cell.error = e.what();
            }
        }
    }
    set_blas_threads(omp_get_max_threads());
    return cells;
}

double find_parameter_for_tau(const ModelParams& base, const std::string& param, int mode_n,
                              double target_tau, double lo, double hi, double rel_tol) {
    if (!base.has(param)) throw config_error("find_parameter_for_tau: unknown parameter");
    auto f = [&](double v) {
        ModelParams p = base;
        p.set(param, v);
        return tau_at(p, mode_n) - target_tau;
    };
    double flo = f(lo), fhi = f(hi);
    if ((flo > 0) == (fhi > 0))
        throw solver_error("find_parameter_for_tau: target not bracketed: tau(" +
                           std::to_string(lo) + ") - T = " + std::to_string(flo) + ", tau(" +
                           std::to_string(hi) + ") - T = " + std::to_string(fhi));
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0) == (fhi > 0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
        if (std::abs(fm) <= rel_tol * target_tau) return mid;
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace qam
