#pragma once

#include "swipt/channel.hpp"
#include "swipt/eh_model.hpp"
#include "swipt/ps_policy.hpp"
#include "swipt/units.hpp"

namespace swipt {

/// Destination node whose outage is being evaluated. Destination B receives
/// the message of A and vice versa.
enum class Direction { A, B };

/// SNR threshold test. A relative slack of 1e-12 keeps the binding optimal
/// split (relay SNR == gamma_th in exact arithmetic) on the decodable side.
bool meets_threshold(double snr, double gamma_th);

/// Relay SNR for decoding source i: P |h_i|^2 (1 - rho_i) / (d_i^alpha sigma^2).
double relay_snr(const SystemParams& params, double gain, double dist, const PowerSplit& split);

/// Relay broadcast power E_total / ((1 - 2 beta) T).
double relay_power(const SystemParams& params, const EhModel& eh, const SplitPair& splits,
                   const ChannelRealization& ch);

/// End-to-end SNR at destination i: P_R |h_i|^2 / (2 d_i^alpha sigma^2).
double destination_snr(const SystemParams& params, double p_relay, double gain, double dist);

/// Same SNR through the expanded segment form
/// a_j rho_i P g_i^2 X d_i^-2a + X d_i^-a (a_k rho_j P g_j g_i d_j^-a + (b_k + b_j) g_i).
/// Equal to destination_snr whenever neither harvester output is clamped.
double destination_snr_expanded(const SystemParams& params, const DerivedParams& derived,
                                const EhModel& eh, const SplitPair& splits,
                                const ChannelRealization& ch, Direction dest);

/// Result of replaying the three slots for one realization.
struct TrialOutcome {
    bool outage_a = true;
    bool outage_b = true;
    bool relay_decode_a = false;    // relay decoded s_A in slot 1
    bool relay_decode_b = false;    // relay decoded s_B in slot 2
    double rho_a = 0.0;
    double rho_b = 0.0;
    double p_relay = 0.0;           // W
};

TrialOutcome evaluate_links(const SystemParams& params, const DerivedParams& derived,
                            const EhModel& eh, const SplitPair& splits,
                            const ChannelRealization& ch);

} // namespace swipt
