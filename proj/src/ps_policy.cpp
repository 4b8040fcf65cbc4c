#include "swipt/ps_policy.hpp"

#include <fmt/core.h>

#include <cmath>
#include <stdexcept>

namespace swipt {

PsPolicy parse_policy(std::string_view text)
{
    if (text == "optimal")
        return OptimalDynamic{};
    if (text == "random")
        return RandomUniform{};
    constexpr std::string_view prefix = "static:";
    if (text.starts_with(prefix)) {
        const std::string num(text.substr(prefix.size()));
        double rho0 = 0.0;
        try {
            std::size_t used = 0;
            rho0 = std::stod(num, &used);
            if (used != num.size())
                throw std::invalid_argument(num);
        } catch (const std::logic_error&) {
            throw InvalidArgument("policy '" + std::string(text) + "': malformed static ratio");
        }
        if (!(rho0 >= 0.0 && rho0 < 1.0))
            throw InvalidArgument("policy '" + std::string(text) + "': static ratio must lie in [0, 1)");
        return StaticEqual{rho0};
    }
    throw InvalidArgument("unknown policy '" + std::string(text) +
                          "' (expected optimal, static:<rho0> or random)");
}

std::string policy_name(const PsPolicy& policy)
{
    struct Namer {
        std::string operator()(const OptimalDynamic&) const { return "optimal"; }
        std::string operator()(const StaticEqual& s) const { return fmt::format("static:{}", s.rho0); }
        std::string operator()(const RandomUniform&) const { return "random"; }
    };
    return std::visit(Namer{}, policy);
}

PowerSplit optimal_split(const DerivedParams& derived, double gain, double dist, double alpha)
{
    if (!(dist > 0.0))
        throw InvalidArgument("optimal_split: distance must be > 0");
    if (!(gain >= 0.0))
        throw InvalidArgument("optimal_split: gain must be >= 0");
    const double needed = derived.varpi * std::pow(dist, alpha);
    if (gain <= needed)
        return {0.0, 1.0};
    const double info = needed / gain;
    return {1.0 - info, info};
}

double optimal_rho(const DerivedParams& derived, double gain, double dist, double alpha)
{
    return optimal_split(derived, gain, dist, alpha).harvest;
}

SplitPair select_ratios(const PsPolicy& policy, const DerivedParams& derived,
                        const SystemParams& params, const ChannelRealization& ch,
                        RngStream& rng)
{
    if (std::holds_alternative<OptimalDynamic>(policy))
        return {optimal_split(derived, ch.gain_a, params.d_a, params.alpha),
                optimal_split(derived, ch.gain_b, params.d_b, params.alpha)};
    if (const auto* s = std::get_if<StaticEqual>(&policy))
        return {PowerSplit::from_rho(s->rho0), PowerSplit::from_rho(s->rho0)};
    const double ra = rng.next_uniform();
    const double rb = rng.next_uniform();
    return {PowerSplit::from_rho(ra), PowerSplit::from_rho(rb)};
}

} // namespace swipt
