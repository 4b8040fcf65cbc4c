#pragma once

#include "swipt/channel.hpp"
#include "swipt/units.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace swipt {

/// Power-splitting decision for one link. Both fractions are stored because
/// the optimal ratio sits within ~1e-6 of 1 at practical SNRs, where
/// forming 1 - rho in floating point loses most significant digits.
struct PowerSplit {
    double harvest = 0.0;   // rho, routed to the energy harvester
    double info = 1.0;      // 1 - rho, routed to the information decoder

    static PowerSplit from_rho(double rho) { return {rho, 1.0 - rho}; }
};

struct SplitPair {
    PowerSplit a;
    PowerSplit b;
};

struct OptimalDynamic {};
struct StaticEqual {
    double rho0 = 0.5;
};
struct RandomUniform {};

using PsPolicy = std::variant<OptimalDynamic, StaticEqual, RandomUniform>;

/// Parses `optimal`, `static:<rho0>` or `random`.
PsPolicy parse_policy(std::string_view text);
std::string policy_name(const PsPolicy& policy);

/// Largest harvest fraction that still lets the relay decode:
/// max{1 - varpi d^alpha / gain, 0}.
double optimal_rho(const DerivedParams& derived, double gain, double dist, double alpha);

/// Same ratio with the decoder fraction min{varpi d^alpha / gain, 1} formed
/// directly.
PowerSplit optimal_split(const DerivedParams& derived, double gain, double dist, double alpha);

/// Applies the policy to one realization. RandomUniform draws two uniforms
/// from `rng`; the other policies leave it untouched.
SplitPair select_ratios(const PsPolicy& policy, const DerivedParams& derived,
                        const SystemParams& params, const ChannelRealization& ch,
                        RngStream& rng);

} // namespace swipt
