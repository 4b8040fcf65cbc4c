#include "swipt/eh_model.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

namespace swipt {

EhModel::EhModel(std::vector<double> thresholds, std::vector<double> slopes,
                 std::vector<double> intercepts, double p_max)
    : thresholds_(std::move(thresholds)), slopes_(std::move(slopes)),
      intercepts_(std::move(intercepts)), p_max_(p_max)
{
    if (thresholds_.empty())
        throw InvalidArgument("EhModel: at least one threshold is required");
    for (std::size_t j = 0; j < thresholds_.size(); ++j) {
        if (!std::isfinite(thresholds_[j]) || thresholds_[j] <= 0.0)
            throw InvalidArgument("EhModel: threshold " + std::to_string(j + 1) +
                                  " must be positive and finite");
        if (j > 0 && thresholds_[j] <= thresholds_[j - 1])
            throw InvalidArgument("EhModel: thresholds must be strictly increasing (segment " +
                                  std::to_string(j) + " has P_th^" + std::to_string(j + 1) +
                                  " <= P_th^" + std::to_string(j) + ")");
    }
    const std::size_t interior = thresholds_.size() - 1;
    if (slopes_.size() != interior || intercepts_.size() != interior)
        throw InvalidArgument("EhModel: expected " + std::to_string(interior) +
                              " slopes and intercepts for " +
                              std::to_string(thresholds_.size()) + " thresholds");
    for (std::size_t j = 0; j < interior; ++j)
        if (!std::isfinite(slopes_[j]) || !std::isfinite(intercepts_[j]))
            throw InvalidArgument("EhModel: segment " + std::to_string(j + 1) +
                                  " has non-finite coefficients");
    if (!std::isfinite(p_max_) || p_max_ <= 0.0)
        throw InvalidArgument("EhModel: p_max must be positive");
}

double EhModel::threshold(std::size_t j) const
{
    if (j < 1 || j > thresholds_.size())
        throw InvalidArgument("EhModel::threshold: index out of range");
    return thresholds_[j - 1];
}

double EhModel::slope(std::size_t j) const
{
    const std::size_t n = thresholds_.size();
    if (j > n)
        throw InvalidArgument("EhModel::slope: index out of range");
    return (j == 0 || j == n) ? 0.0 : slopes_[j - 1];
}

double EhModel::intercept(std::size_t j) const
{
    const std::size_t n = thresholds_.size();
    if (j > n)
        throw InvalidArgument("EhModel::intercept: index out of range");
    if (j == 0)
        return 0.0;
    return j == n ? p_max_ : intercepts_[j - 1];
}

std::size_t EhModel::segment_index(double p_rf) const
{
    if (!(p_rf >= 0.0))
        throw InvalidArgument("EhModel::segment_index: input power must be >= 0");
    // Number of thresholds <= p_rf, which is the half-open segment index.
    return static_cast<std::size_t>(
        std::upper_bound(thresholds_.begin(), thresholds_.end(), p_rf) - thresholds_.begin());
}

double EhModel::segment_line(double p_rf) const
{
    const std::size_t j = segment_index(p_rf);
    return slope(j) * p_rf + intercept(j);
}

double EhModel::harvested_power(double p_rf) const
{
    return std::clamp(segment_line(p_rf), 0.0, p_max_);
}

EhModel default_eh_model(double fourth_threshold_w)
{
    return EhModel({10e-6, 57.68e-6, 230.06e-6, fourth_threshold_w},
                   {0.3899, 0.6967, 0.1427},
                   {-1.6613e-6, -19.1737e-6, 108.2778e-6},
                   250e-6);
}

double total_harvested_energy(const EhModel& model, const SystemParams& params,
                              double rho_a, double rho_b, double gain_a, double gain_b)
{
    if (rho_a < 0.0 || rho_a > 1.0 || rho_b < 0.0 || rho_b > 1.0)
        throw InvalidArgument("total_harvested_energy: split ratios must lie in [0, 1]");
    if (gain_a < 0.0 || gain_b < 0.0)
        throw InvalidArgument("total_harvested_energy: channel gains must be >= 0");
    const double rf_a = rho_a * params.p_tx * gain_a * std::pow(params.d_a, -params.alpha);
    const double rf_b = rho_b * params.p_tx * gain_b * std::pow(params.d_b, -params.alpha);
    return params.beta * params.t_block *
           (model.harvested_power(rf_a) + model.harvested_power(rf_b));
}

namespace {

struct LineFit {
    double slope;
    double intercept;
};

LineFit least_squares_line(std::span<const std::pair<double, double>> pts, std::size_t segment)
{
    const double n = static_cast<double>(pts.size());
    double x_bar = 0.0;
    double y_bar = 0.0;
    for (const auto& [x, y] : pts) {
        x_bar += x;
        y_bar += y;
    }
    x_bar /= n;
    y_bar /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& [x, y] : pts) {
        sxy += (x - x_bar) * (y - y_bar);
        sxx += (x - x_bar) * (x - x_bar);
    }
    if (!(sxx > 0.0))
        throw InvalidArgument("fit_segments: segment " + std::to_string(segment) +
                              " is degenerate (all input powers equal)");
    const double a = sxy / sxx;
    return {a, y_bar - a * x_bar};
}

} // namespace

EhModel fit_segments(const EhDataset& data)
{
    const auto& bp = data.breakpoints;
    if (bp.empty())
        throw InvalidArgument("fit_segments: at least one breakpoint is required");
    if (!std::is_sorted(data.points.begin(), data.points.end(),
                        [](const auto& l, const auto& r) { return l.first < r.first; }))
        throw InvalidArgument("fit_segments: points must be sorted by input power");

    const std::size_t n = bp.size();
    std::vector<std::vector<std::pair<double, double>>> buckets(n + 1);
    for (const auto& p : data.points) {
        const auto seg = static_cast<std::size_t>(
            std::upper_bound(bp.begin(), bp.end(), p.first) - bp.begin());
        buckets[seg].push_back(p);
    }

    std::vector<double> slopes;
    std::vector<double> intercepts;
    for (std::size_t j = 1; j < n; ++j) {
        if (buckets[j].size() < 2)
            throw InvalidArgument("fit_segments: segment " + std::to_string(j) +
                                  " needs at least 2 points, has " +
                                  std::to_string(buckets[j].size()));
        const LineFit f = least_squares_line(buckets[j], j);
        slopes.push_back(f.slope);
        intercepts.push_back(f.intercept);
    }
    if (buckets[n].size() < 2)
        throw InvalidArgument("fit_segments: saturation segment " + std::to_string(n) +
                              " needs at least 2 points, has " +
                              std::to_string(buckets[n].size()));
    double p_max = 0.0;
    for (const auto& p : buckets[n])
        p_max += p.second;
    p_max /= static_cast<double>(buckets[n].size());

    return EhModel(bp, std::move(slopes), std::move(intercepts), p_max);
}

EhDataset read_eh_csv(std::istream& in, std::vector<double> breakpoints_w)
{
    std::string line;
    if (!std::getline(in, line))
        throw InvalidArgument("read_eh_csv: empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "p_in_uW,p_out_uW")
        throw InvalidArgument("read_eh_csv: expected header 'p_in_uW,p_out_uW', got '" + line + "'");

    EhDataset data;
    data.breakpoints = std::move(breakpoints_w);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw InvalidArgument("read_eh_csv: line " + std::to_string(lineno) +
                                  ": expected two comma-separated fields");
        try {
            std::size_t used = 0;
            const std::string xs = line.substr(0, comma);
            const std::string ys = line.substr(comma + 1);
            const double x = std::stod(xs, &used);
            if (used != xs.size())
                throw std::invalid_argument(xs);
            const double y = std::stod(ys, &used);
            if (used != ys.size())
                throw std::invalid_argument(ys);
            data.points.emplace_back(uw_to_watts(x), uw_to_watts(y));
        } catch (const std::logic_error&) {
            throw InvalidArgument("read_eh_csv: line " + std::to_string(lineno) +
                                  ": malformed number");
        }
    }
    std::stable_sort(data.points.begin(), data.points.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    return data;
}

std::string eh_model_to_json(const EhModel& model)
{
    nlohmann::json j;
    std::vector<double> th;
    std::vector<double> b;
    for (double t : model.thresholds())
        th.push_back(watts_to_uw(t));
    for (double v : model.interior_intercepts())
        b.push_back(watts_to_uw(v));
    j["thresholds_uW"] = th;
    j["slopes"] = std::vector<double>(model.interior_slopes().begin(), model.interior_slopes().end());
    j["intercepts_uW"] = b;
    j["p_max_uW"] = watts_to_uw(model.p_max());
    return j.dump(2) + "\n";
}

EhModel eh_model_from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(std::string("eh model: ") + e.what());
    }
    auto vec = [&](const char* key, double scale) {
        if (!j.contains(key) || !j[key].is_array())
            throw InvalidArgument(std::string("eh model: missing array '") + key + "'");
        std::vector<double> out;
        for (const auto& v : j[key]) {
            if (!v.is_number())
                throw InvalidArgument(std::string("eh model: '") + key + "' must hold numbers");
            out.push_back(v.get<double>() * scale);
        }
        return out;
    };
    if (!j.contains("p_max_uW") || !j["p_max_uW"].is_number())
        throw InvalidArgument("eh model: missing number 'p_max_uW'");
    return EhModel(vec("thresholds_uW", 1e-6), vec("slopes", 1.0), vec("intercepts_uW", 1e-6),
                   uw_to_watts(j["p_max_uW"].get<double>()));
}

} // namespace swipt
