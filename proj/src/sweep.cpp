#include "swipt/experiment.hpp"

#include "swipt/analytic.hpp"
#include "swipt/montecarlo.hpp"
#include "swipt/oracle.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace swipt {

namespace {

std::string num(double v) { return fmt::format("{:.9g}", v); }

template <class T>
std::string opt(const std::optional<T>& v)
{
    if (!v)
        return "";
    if constexpr (std::is_floating_point_v<T>)
        return num(*v);
    else
        return fmt::format("{}", *v);
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg)
{
    const SweepSpec& sw = cfg.sweep;
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < sw.grid.size(); ++i) {
        const SystemParams params = params_at(cfg, i);
        const DerivedParams derived = derive(params, cfg.eh);
        for (const PolicySpec& spec : sw.policies) {
            PsPolicy policy = spec.policy;
            std::string name = spec.name();
            if (spec.calibrate) {
                const StaticCalibration cal =
                    calibrate_static(params, derived, cfg.eh, sw.calibration_trials, sw.seed);
                policy = StaticEqual{cal.rho0};
                name = fmt::format("static:calibrated={}", cal.rho0);
            }
            const bool optimal = std::holds_alternative<OptimalDynamic>(policy);
            for (Evaluator ev : sw.evaluators) {
                // closed forms exist for the optimal policy only
                if (ev != Evaluator::MonteCarlo && !optimal)
                    continue;
                SweepRow row;
                row.swept_value = sw.grid_display[i];
                row.policy = name;
                row.evaluator = ev;
                switch (ev) {
                case Evaluator::Analytic: {
                    AnalyticOptions opts;
                    opts.quad_m = sw.quad_m;
                    const OutageReport rep = OutageAnalysis(params, cfg.eh, opts).report();
                    row.p_out_a = rep.a.p_out;
                    row.p_out_b = rep.b.p_out;
                    row.capacity = rep.capacity;
                    row.quad_m = sw.quad_m;
                    break;
                }
                case Evaluator::MonteCarlo: {
                    const OutageEstimate e =
                        estimate(params, derived, cfg.eh, policy, sw.n_trials, sw.seed);
                    row.p_out_a = e.p_out_a;
                    row.p_out_b = e.p_out_b;
                    row.capacity = e.capacity;
                    row.stderr_a = e.stderr_a;
                    row.stderr_b = e.stderr_b;
                    row.n_trials = e.n_trials;
                    row.seed = e.seed;
                    break;
                }
                case Evaluator::Oracle: {
                    const OracleResult a = oracle_outage(Direction::A, params, cfg.eh, sw.oracle_grid_n);
                    const OracleResult b = oracle_outage(Direction::B, params, cfg.eh, sw.oracle_grid_n);
                    row.p_out_a = a.value;
                    row.p_out_b = b.value;
                    row.capacity = capacity_total(params, std::clamp(a.value, 0.0, 1.0),
                                                  std::clamp(b.value, 0.0, 1.0));
                    // Integration error estimates take the place of standard errors.
                    row.stderr_a = a.error_estimate;
                    row.stderr_b = b.error_estimate;
                    break;
                }
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows,
               const std::vector<std::string>& metadata)
{
    for (const auto& m : metadata)
        out << "# " << m << '\n';
    out << "swept_value,policy,evaluator,p_out_a,p_out_b,capacity,stderr_a,stderr_b,n_trials,"
           "quad_m,seed\n";
    for (const SweepRow& r : rows) {
        out << num(r.swept_value) << ',' << csv_field(r.policy) << ',' << to_string(r.evaluator)
            << ',' << num(r.p_out_a) << ',' << num(r.p_out_b) << ',' << num(r.capacity) << ','
            << opt(r.stderr_a) << ',' << opt(r.stderr_b) << ',' << opt(r.n_trials) << ','
            << opt(r.quad_m) << ',' << opt(r.seed) << '\n';
    }
}

VerifyReport verify(const ExperimentConfig& cfg)
{
    VerifyReport rep;
    const double powers_mw[] = {0.1, 1.0, 10.0, 100.0};
    const double alphas[] = {2.0, 2.7, 3.0};
    for (double p_mw : powers_mw) {
        for (double alpha : alphas) {
            SystemParams params = cfg.params;
            params.p_tx = mw_to_watts(p_mw);
            params.alpha = alpha;
            AnalyticOptions opts;
            opts.quad_m = cfg.sweep.quad_m;
            const OutageReport an = OutageAnalysis(params, cfg.eh, opts).report();
            const OracleResult oa = oracle_outage(Direction::A, params, cfg.eh, cfg.sweep.oracle_grid_n);
            const OracleResult ob = oracle_outage(Direction::B, params, cfg.eh, cfg.sweep.oracle_grid_n);
            const OutageEstimate mc = estimate(params, derive(params, cfg.eh), cfg.eh,
                                               OptimalDynamic{}, cfg.sweep.n_trials, cfg.sweep.seed);

            const double d_oracle =
                std::max(std::abs(an.a.p_out - oa.value), std::abs(an.b.p_out - ob.value));
            const double d_mc =
                std::max(std::abs(an.a.p_out - mc.p_out_a), std::abs(an.b.p_out - mc.p_out_b));
            const bool ok_oracle = d_oracle <= 1e-4;
            const bool ok_mc = d_mc <= 0.01;
            rep.passed = rep.passed && ok_oracle && ok_mc;
            rep.lines.push_back(fmt::format(
                "P={}mW alpha={}: analytic A={:.6g} B={:.6g} | oracle max|diff|={:.3g} [{}] | "
                "montecarlo max|diff|={:.3g} [{}]",
                p_mw, alpha, an.a.p_out, an.b.p_out, d_oracle, ok_oracle ? "PASS" : "FAIL", d_mc,
                ok_mc ? "PASS" : "FAIL"));
        }
    }
    return rep;
}

} // namespace swipt
