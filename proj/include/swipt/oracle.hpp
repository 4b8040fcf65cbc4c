#pragma once

#include "swipt/eh_model.hpp"
#include "swipt/link.hpp"
#include "swipt/units.hpp"

namespace swipt {

struct OracleResult {
    double value = 0.0;
    /// Sum of the local Simpson error estimates plus the truncated tail mass.
    double error_estimate = 0.0;
    long evaluations = 0;
};

/// Brute-force outage probability of the optimal dynamic split.
///
/// Integrates the exact per-realization outage indicator (the same link
/// budget the Monte-Carlo trials replay, no case analysis) against the joint
/// exponential density over [0, 40 lambda_A] x [0, 40 lambda_B]. The inner
/// integral scans `grid_n` uniform-probability points plus `grid_n`
/// log-spaced gains, brackets every change of the indicator and bisects it
/// to machine precision; the mass between crossings is exact. The outer
/// integral is adaptive Simpson in probability space.
OracleResult oracle_outage(Direction dest, const SystemParams& params, const EhModel& eh,
                           int grid_n = 1024, double tolerance = 1e-9);

} // namespace swipt
