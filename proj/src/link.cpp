#include "swipt/link.hpp"

#include <cmath>

namespace swipt {

bool meets_threshold(double snr, double gamma_th)
{
    return snr >= gamma_th * (1.0 - 1e-12);
}

double relay_snr(const SystemParams& params, double gain, double dist, const PowerSplit& split)
{
    return params.p_tx * gain * split.info / (std::pow(dist, params.alpha) * params.sigma2);
}

double relay_power(const SystemParams& params, const EhModel& eh, const SplitPair& splits,
                   const ChannelRealization& ch)
{
    const double e_total =
        total_harvested_energy(eh, params, splits.a.harvest, splits.b.harvest, ch.gain_a, ch.gain_b);
    return e_total / ((1.0 - 2.0 * params.beta) * params.t_block);
}

double destination_snr(const SystemParams& params, double p_relay, double gain, double dist)
{
    return p_relay * gain / (2.0 * std::pow(dist, params.alpha) * params.sigma2);
}

double destination_snr_expanded(const SystemParams& params, const DerivedParams& derived,
                                const EhModel& eh, const SplitPair& splits,
                                const ChannelRealization& ch, Direction dest)
{
    const bool to_b = dest == Direction::B;
    const double g_i = to_b ? ch.gain_b : ch.gain_a;
    const double g_o = to_b ? ch.gain_a : ch.gain_b;
    const double d_i = to_b ? params.d_b : params.d_a;
    const double d_o = to_b ? params.d_a : params.d_b;
    const double rho_i = to_b ? splits.b.harvest : splits.a.harvest;
    const double rho_o = to_b ? splits.a.harvest : splits.b.harvest;
    const double p = params.p_tx;
    const double x = derived.big_x;

    const double di_a = std::pow(d_i, -params.alpha);
    const double do_a = std::pow(d_o, -params.alpha);
    const std::size_t j = eh.segment_index(rho_i * p * g_i * di_a);
    const std::size_t k = eh.segment_index(rho_o * p * g_o * do_a);

    return eh.slope(j) * rho_i * p * g_i * g_i * x * di_a * di_a +
           x * di_a * (eh.slope(k) * rho_o * p * g_o * g_i * do_a +
                       (eh.intercept(k) + eh.intercept(j)) * g_i);
}

TrialOutcome evaluate_links(const SystemParams& params, const DerivedParams& derived,
                            const EhModel& eh, const SplitPair& splits,
                            const ChannelRealization& ch)
{
    TrialOutcome out;
    out.rho_a = splits.a.harvest;
    out.rho_b = splits.b.harvest;
    out.relay_decode_a =
        meets_threshold(relay_snr(params, ch.gain_a, params.d_a, splits.a), derived.gamma_th);
    out.relay_decode_b =
        meets_threshold(relay_snr(params, ch.gain_b, params.d_b, splits.b), derived.gamma_th);
    out.p_relay = relay_power(params, eh, splits, ch);

    const bool dest_b_ok = meets_threshold(
        destination_snr(params, out.p_relay, ch.gain_b, params.d_b), derived.gamma_th);
    const bool dest_a_ok = meets_threshold(
        destination_snr(params, out.p_relay, ch.gain_a, params.d_a), derived.gamma_th);
    out.outage_b = !(out.relay_decode_a && dest_b_ok);
    out.outage_a = !(out.relay_decode_b && dest_a_ok);
    return out;
}

} // namespace swipt
