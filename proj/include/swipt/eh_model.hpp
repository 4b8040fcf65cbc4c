#pragma once

#include "swipt/units.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace swipt {

/// Piecewise-linear energy harvester with N thresholds and N+1 segments.
///
/// Segment 0 lies below the sensitivity P_th^1 and harvests nothing,
/// segment j in 1..N-1 covers [P_th^j, P_th^{j+1}) with output a_j p + b_j,
/// and segment N is the saturation region with output P_m. Boundaries are
/// half-open so that every input maps to exactly one segment.
class EhModel {
public:
    EhModel(std::vector<double> thresholds, std::vector<double> slopes,
            std::vector<double> intercepts, double p_max);

    std::size_t num_thresholds() const { return thresholds_.size(); }
    std::span<const double> thresholds() const { return thresholds_; }
    std::span<const double> interior_slopes() const { return slopes_; }
    std::span<const double> interior_intercepts() const { return intercepts_; }
    double p_max() const { return p_max_; }

    /// P_th^j for j in 1..N.
    double threshold(std::size_t j) const;
    /// a_j for j in 0..N, with a_0 = a_N = 0.
    double slope(std::size_t j) const;
    /// b_j for j in 0..N, with b_0 = 0 and b_N = P_m.
    double intercept(std::size_t j) const;

    std::size_t segment_index(double p_rf) const;

    /// Harvested power for RF input p_rf, clamped to [0, P_m].
    double harvested_power(double p_rf) const;

    /// Unclamped a_j p + b_j of the segment that p_rf falls into.
    double segment_line(double p_rf) const;

private:
    std::vector<double> thresholds_;
    std::vector<double> slopes_;
    std::vector<double> intercepts_;
    double p_max_;
};

/// Four-threshold reference harvester (P_m = 250 uW). The fourth threshold
/// is a parameter, default 1000 uW.
EhModel default_eh_model(double fourth_threshold_w = 1000e-6);

/// Total energy harvested at the relay over both uplink slots.
double total_harvested_energy(const EhModel& model, const SystemParams& params,
                              double rho_a, double rho_b, double gain_a, double gain_b);

/// Measured (input, output) pairs plus the segment boundaries used to split
/// them. Powers in watts.
struct EhDataset {
    std::vector<std::pair<double, double>> points;
    std::vector<double> breakpoints;
};

/// Per-segment ordinary least squares; saturation level is the mean output
/// above the last breakpoint. Points below the first breakpoint are ignored.
EhModel fit_segments(const EhDataset& data);

/// Reads `p_in_uW,p_out_uW` CSV (header required) into watts.
EhDataset read_eh_csv(std::istream& in, std::vector<double> breakpoints_w);

std::string eh_model_to_json(const EhModel& model);
EhModel eh_model_from_json(const std::string& text);

} // namespace swipt
