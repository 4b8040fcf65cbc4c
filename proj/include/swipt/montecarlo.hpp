#pragma once

#include "swipt/channel.hpp"
#include "swipt/eh_model.hpp"
#include "swipt/link.hpp"
#include "swipt/ps_policy.hpp"
#include "swipt/units.hpp"

#include <cstdint>

namespace swipt {

/// Replays the three slots for one realization: split selection, relay
/// decoding, harvesting, relay broadcast and destination decoding.
TrialOutcome run_trial(const SystemParams& params, const DerivedParams& derived,
                       const EhModel& eh, const PsPolicy& policy,
                       const ChannelRealization& ch, RngStream& rng);

struct OutageEstimate {
    double p_out_a = 0.0;
    double p_out_b = 0.0;
    double stderr_a = 0.0;
    double stderr_b = 0.0;
    double capacity = 0.0;
    double capacity_stderr = 0.0;
    std::uint64_t n_trials = 0;
    std::uint64_t seed = 0;
    // Raw counts; estimates are formed from these once at the end.
    std::uint64_t outages_a = 0;
    std::uint64_t outages_b = 0;
    std::uint64_t outages_both = 0;
};

struct McOptions {
    /// 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;
};

/// Trial t draws everything from RngStream(seed, t), so the result depends
/// only on (seed, n_trials) and never on the worker count.
OutageEstimate estimate(const SystemParams& params, const DerivedParams& derived,
                        const EhModel& eh, const PsPolicy& policy, std::uint64_t n_trials,
                        std::uint64_t seed, McOptions options = {});

struct StaticCalibration {
    double rho0 = 0.5;
    double capacity = 0.0;
};

/// Grid search of the static ratio over {0.01, ..., 0.99} maximizing the
/// Monte-Carlo capacity. All candidates share the same channel draws.
StaticCalibration calibrate_static(const SystemParams& params, const DerivedParams& derived,
                                   const EhModel& eh, std::uint64_t n_trials,
                                   std::uint64_t seed, McOptions options = {});

} // namespace swipt
