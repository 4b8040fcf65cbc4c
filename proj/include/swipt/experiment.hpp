#pragma once

#include "swipt/eh_model.hpp"
#include "swipt/ps_policy.hpp"
#include "swipt/units.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace swipt {

enum class SweptVariable { PTx, RateU, DistanceA };
enum class Evaluator { Analytic, MonteCarlo, Oracle };

std::string to_string(SweptVariable v);
std::string to_string(Evaluator e);

/// A policy entry of a sweep. `static:calibrated` re-runs the static ratio
/// grid search at every grid point.
struct PolicySpec {
    PsPolicy policy = OptimalDynamic{};
    bool calibrate = false;

    std::string name() const;
};

struct SweepSpec {
    SweptVariable variable = SweptVariable::PTx;
    std::vector<double> grid;           // SI units (W, bit/s/Hz, m)
    std::vector<double> grid_display;   // as written in the config
    std::string grid_unit = "mW";
    std::vector<Evaluator> evaluators{Evaluator::Analytic, Evaluator::MonteCarlo};
    std::vector<PolicySpec> policies{PolicySpec{}};
    std::uint64_t n_trials = 1'000'000;
    std::uint64_t seed = 1;
    int quad_m = 10;
    int oracle_grid_n = 1024;
    std::uint64_t calibration_trials = 100'000;
    std::optional<double> total_distance;   // m, required for DistanceA
};

struct ExperimentConfig {
    SystemParams params;
    EhModel eh = default_eh_model();
    SweepSpec sweep;
};

/// Parses the JSON config. Omitted fields take the reference scenario values
/// (P = 10 mW, sigma^2 = -90 dBm, alpha = 3, d_A = 15 m, d_B = 10 m,
/// beta = 1/3, U = 3, four-threshold harvester). `default_seed` is used when
/// the document does not set `sweep.seed`.
ExperimentConfig parse_config(const std::string& text, std::uint64_t default_seed = 1);

/// SystemParams with the swept variable set to the i-th grid value.
SystemParams params_at(const ExperimentConfig& cfg, std::size_t i);

struct SweepRow {
    double swept_value = 0.0;
    std::string policy;
    Evaluator evaluator = Evaluator::Analytic;
    double p_out_a = 0.0;
    double p_out_b = 0.0;
    double capacity = 0.0;
    std::optional<double> stderr_a;
    std::optional<double> stderr_b;
    std::optional<std::uint64_t> n_trials;
    std::optional<int> quad_m;
    std::optional<std::uint64_t> seed;
};

/// One row per grid value x policy x evaluator, in grid order. Analytic and
/// oracle rows are produced for the optimal policy only.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

/// RFC-4180 CSV with a header row; each metadata line is emitted first as a
/// `# ` comment. Numbers use 9 significant digits.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows,
               const std::vector<std::string>& metadata = {});

struct VerifyReport {
    std::vector<std::string> lines;
    bool passed = true;
};

/// Oracle equivalence (|analytic - oracle| <= 1e-4) and Monte-Carlo
/// agreement (|analytic - MC| <= 0.01) over P in {0.1, 1, 10, 100} mW and
/// alpha in {2, 2.7, 3}, other parameters taken from the config.
VerifyReport verify(const ExperimentConfig& cfg);

} // namespace swipt
