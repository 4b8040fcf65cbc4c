#include "swipt/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace swipt {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw InvalidArgument("config: " + path + ": " + what);
}

/// Object reader that records which keys were used and rejects the rest.
class Section {
public:
    Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path))
    {
        if (!obj_.is_object())
            fail(path_, "expected an object");
    }

    std::string at(const std::string& key) const { return path_ + "." + key; }
    bool has(const std::string& key) const { return obj_.contains(key); }

    const json* get(const std::string& key)
    {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    std::optional<double> number(const std::string& key)
    {
        const json* v = get(key);
        if (!v)
            return std::nullopt;
        if (!v->is_number())
            fail(at(key), "expected a number");
        return v->get<double>();
    }

    std::optional<std::vector<double>> numbers(const std::string& key)
    {
        const json* v = get(key);
        if (!v)
            return std::nullopt;
        if (!v->is_array())
            fail(at(key), "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v->size(); ++i) {
            if (!(*v)[i].is_number())
                fail(at(key) + "[" + std::to_string(i) + "]", "expected a number");
            out.push_back((*v)[i].get<double>());
        }
        return out;
    }

    /// Dimensioned scalar: exactly one of `<base>_<suffix>` may be present and
    /// the bare key is an error. Returns the value converted to SI.
    template <std::size_t N>
    std::optional<double> dimensioned(const std::string& base,
                                      const std::pair<const char*, double (*)(double)> (&units)[N])
    {
        if (has(base)) {
            std::string hint;
            for (const auto& u : units)
                hint += (hint.empty() ? "" : ", ") + base + "_" + u.first;
            fail(at(base), "missing unit suffix (use " + hint + ")");
        }
        std::optional<double> out;
        std::string used;
        for (const auto& u : units) {
            const std::string key = base + "_" + u.first;
            if (auto v = number(key)) {
                if (out)
                    fail(at(key), "conflicts with " + used);
                out = u.second(*v);
                used = key;
            }
        }
        return out;
    }

    void reject_unknown() const
    {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!seen_.count(it.key()))
                fail(at(it.key()), "unknown field");
    }

private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

double identity(double v) { return v; }
double from_mw(double v) { return mw_to_watts(v); }
double from_dbm(double v) { return dbm_to_watts(v); }

const std::pair<const char*, double (*)(double)> kPowerUnits[] = {
    {"W", identity}, {"mW", from_mw}, {"dBm", from_dbm}};
const std::pair<const char*, double (*)(double)> kMeters[] = {{"m", identity}};
const std::pair<const char*, double (*)(double)> kSeconds[] = {{"s", identity}};

void parse_system(Section s, SystemParams& p)
{
    if (auto v = s.dimensioned("p_tx", kPowerUnits))
        p.p_tx = *v;
    if (auto v = s.dimensioned("sigma2", kPowerUnits))
        p.sigma2 = *v;
    if (auto v = s.number("alpha"))
        p.alpha = *v;
    if (auto v = s.dimensioned("d_a", kMeters))
        p.d_a = *v;
    if (auto v = s.dimensioned("d_b", kMeters))
        p.d_b = *v;
    if (auto v = s.number("beta"))
        p.beta = *v;
    if (auto v = s.dimensioned("t_block", kSeconds))
        p.t_block = *v;
    if (s.has("rate_u"))
        fail(s.at("rate_u"), "missing unit suffix (use rate_u_bps_hz)");
    if (auto v = s.number("rate_u_bps_hz"))
        p.rate_u = *v;
    if (auto v = s.number("lambda_a"))
        p.lambda_a = *v;
    if (auto v = s.number("lambda_b"))
        p.lambda_b = *v;
    s.reject_unknown();
    try {
        p.validate();
    } catch (const InvalidArgument& e) {
        fail("$.system", e.what());
    }
}

EhModel parse_eh(Section s)
{
    for (const char* bare : {"thresholds", "intercepts", "p_max", "fourth_threshold"})
        if (s.has(bare))
            fail(s.at(bare), std::string("missing unit suffix (use ") + bare + "_uW)");

    auto fourth = s.number("fourth_threshold_uW");
    auto th = s.numbers("thresholds_uW");
    auto slopes = s.numbers("slopes");
    auto icpt = s.numbers("intercepts_uW");
    auto pmax = s.number("p_max_uW");
    s.reject_unknown();

    const bool any_full = th || slopes || icpt || pmax;
    try {
        if (!any_full)
            return default_eh_model(uw_to_watts(fourth.value_or(1000.0)));
        if (fourth)
            fail(s.at("fourth_threshold_uW"), "cannot be combined with a full model");
        if (!th || !slopes || !icpt || !pmax)
            fail("$.eh_model", "a custom model needs thresholds_uW, slopes, intercepts_uW and p_max_uW");
        std::vector<double> thw;
        std::vector<double> bw;
        for (double v : *th)
            thw.push_back(uw_to_watts(v));
        for (double v : *icpt)
            bw.push_back(uw_to_watts(v));
        return EhModel(std::move(thw), *slopes, std::move(bw), uw_to_watts(*pmax));
    } catch (const InvalidArgument& e) {
        const std::string what = e.what();
        if (what.starts_with("config:"))
            throw;
        fail("$.eh_model", what);
    }
}

Evaluator parse_evaluator(const std::string& s, const std::string& path)
{
    if (s == "analytic")
        return Evaluator::Analytic;
    if (s == "montecarlo")
        return Evaluator::MonteCarlo;
    if (s == "oracle")
        return Evaluator::Oracle;
    fail(path, "unknown evaluator '" + s + "' (expected analytic, montecarlo or oracle)");
}

std::uint64_t parse_count(Section& s, const std::string& key, std::uint64_t fallback,
                          std::uint64_t min_value)
{
    const json* v = s.get(key);
    if (!v)
        return fallback;
    if (!v->is_number_integer() || v->get<std::int64_t>() < static_cast<std::int64_t>(min_value))
        fail(s.at(key), "expected an integer >= " + std::to_string(min_value));
    return v->get<std::uint64_t>();
}

void parse_sweep(Section s, SweepSpec& sw, std::uint64_t default_seed)
{
    sw.seed = default_seed;
    if (const json* v = s.get("variable")) {
        if (!v->is_string())
            fail(s.at("variable"), "expected a string");
        const std::string name = v->get<std::string>();
        if (name == "p_tx")
            sw.variable = SweptVariable::PTx;
        else if (name == "rate_u")
            sw.variable = SweptVariable::RateU;
        else if (name == "d_a_with_complement")
            sw.variable = SweptVariable::DistanceA;
        else
            fail(s.at("variable"), "unknown variable '" + name +
                                       "' (expected p_tx, rate_u or d_a_with_complement)");
    }

    if (s.has("grid"))
        fail(s.at("grid"), "missing unit suffix (use grid_mW/grid_W/grid_dBm, grid_bps_hz or grid_m)");
    struct GridUnit {
        const char* key;
        const char* unit;
        SweptVariable var;
        double (*to_si)(double);
    };
    static const GridUnit kGrids[] = {
        {"grid_W", "W", SweptVariable::PTx, identity},
        {"grid_mW", "mW", SweptVariable::PTx, from_mw},
        {"grid_dBm", "dBm", SweptVariable::PTx, from_dbm},
        {"grid_bps_hz", "bps_hz", SweptVariable::RateU, identity},
        {"grid_m", "m", SweptVariable::DistanceA, identity},
    };
    bool found = false;
    for (const auto& g : kGrids) {
        auto vals = s.numbers(g.key);
        if (!vals)
            continue;
        if (g.var != sw.variable)
            fail(s.at(g.key), "does not match the swept variable '" + to_string(sw.variable) + "'");
        if (found)
            fail(s.at(g.key), "only one grid may be given");
        found = true;
        if (vals->empty())
            fail(s.at(g.key), "grid must not be empty");
        for (std::size_t i = 1; i < vals->size(); ++i)
            if (!((*vals)[i] > (*vals)[i - 1]))
                fail(s.at(g.key), "grid must be strictly increasing");
        sw.grid_unit = g.unit;
        sw.grid_display = *vals;
        sw.grid.clear();
        for (double v : *vals)
            sw.grid.push_back(g.to_si(v));
    }
    if (!found)
        fail("$.sweep", "a grid is required (grid_mW, grid_W, grid_dBm, grid_bps_hz or grid_m)");

    if (s.has("total_distance"))
        fail(s.at("total_distance"), "missing unit suffix (use total_distance_m)");
    sw.total_distance = s.number("total_distance_m");
    if (sw.variable == SweptVariable::DistanceA) {
        if (!sw.total_distance)
            fail("$.sweep", "d_a_with_complement requires total_distance_m");
        for (double d : sw.grid)
            if (!(d > 0.0 && d < *sw.total_distance))
                fail(s.at("grid_m"), "every d_a must lie strictly inside (0, total_distance_m)");
    }

    if (const json* v = s.get("evaluators")) {
        if (!v->is_array() || v->empty())
            fail(s.at("evaluators"), "expected a non-empty array");
        sw.evaluators.clear();
        for (std::size_t i = 0; i < v->size(); ++i) {
            const std::string p = s.at("evaluators") + "[" + std::to_string(i) + "]";
            if (!(*v)[i].is_string())
                fail(p, "expected a string");
            sw.evaluators.push_back(parse_evaluator((*v)[i].get<std::string>(), p));
        }
    }
    if (const json* v = s.get("policies")) {
        if (!v->is_array() || v->empty())
            fail(s.at("policies"), "expected a non-empty array");
        sw.policies.clear();
        for (std::size_t i = 0; i < v->size(); ++i) {
            const std::string p = s.at("policies") + "[" + std::to_string(i) + "]";
            if (!(*v)[i].is_string())
                fail(p, "expected a string");
            const std::string text = (*v)[i].get<std::string>();
            if (text == "static:calibrated") {
                sw.policies.push_back({StaticEqual{}, true});
                continue;
            }
            try {
                sw.policies.push_back({parse_policy(text), false});
            } catch (const InvalidArgument& e) {
                fail(p, e.what());
            }
        }
    }

    sw.n_trials = parse_count(s, "n_trials", sw.n_trials, 1);
    sw.seed = parse_count(s, "seed", sw.seed, 0);
    sw.quad_m = static_cast<int>(parse_count(s, "quad_m", static_cast<std::uint64_t>(sw.quad_m), 1));
    sw.oracle_grid_n = static_cast<int>(
        parse_count(s, "oracle_grid_n", static_cast<std::uint64_t>(sw.oracle_grid_n), 100));
    sw.calibration_trials = parse_count(s, "calibration_trials", sw.calibration_trials, 1);
    s.reject_unknown();

    const bool closed_form = std::any_of(sw.evaluators.begin(), sw.evaluators.end(), [](Evaluator e) {
        return e != Evaluator::MonteCarlo;
    });
    const bool has_optimal = std::any_of(sw.policies.begin(), sw.policies.end(), [](const PolicySpec& p) {
        return std::holds_alternative<OptimalDynamic>(p.policy);
    });
    if (closed_form && !has_optimal)
        fail("$.sweep", "evaluators analytic and oracle need the optimal policy in 'policies'");
}

} // namespace

std::string to_string(SweptVariable v)
{
    switch (v) {
    case SweptVariable::PTx: return "p_tx";
    case SweptVariable::RateU: return "rate_u";
    case SweptVariable::DistanceA: return "d_a_with_complement";
    }
    return "?";
}

std::string to_string(Evaluator e)
{
    switch (e) {
    case Evaluator::Analytic: return "analytic";
    case Evaluator::MonteCarlo: return "montecarlo";
    case Evaluator::Oracle: return "oracle";
    }
    return "?";
}

std::string PolicySpec::name() const
{
    return calibrate ? "static:calibrated" : policy_name(policy);
}

ExperimentConfig parse_config(const std::string& text, std::uint64_t default_seed)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("config: malformed JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    Section root(doc, "$");
    if (const json* v = root.get("system"))
        parse_system(Section(*v, "$.system"), cfg.params);
    if (const json* v = root.get("eh_model"))
        cfg.eh = parse_eh(Section(*v, "$.eh_model"));
    cfg.sweep.seed = default_seed;
    if (const json* v = root.get("sweep")) {
        parse_sweep(Section(*v, "$.sweep"), cfg.sweep, default_seed);
    } else {
        cfg.sweep.grid = {cfg.params.p_tx};
        cfg.sweep.grid_display = {watts_to_mw(cfg.params.p_tx)};
    }
    root.reject_unknown();
    return cfg;
}

SystemParams params_at(const ExperimentConfig& cfg, std::size_t i)
{
    SystemParams p = cfg.params;
    const double v = cfg.sweep.grid.at(i);
    switch (cfg.sweep.variable) {
    case SweptVariable::PTx:
        p.p_tx = v;
        break;
    case SweptVariable::RateU:
        p.rate_u = v;
        break;
    case SweptVariable::DistanceA:
        p.d_a = v;
        p.d_b = *cfg.sweep.total_distance - v;
        break;
    }
    p.validate();
    return p;
}

} // namespace swipt
