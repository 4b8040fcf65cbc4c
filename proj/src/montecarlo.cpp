#include "swipt/montecarlo.hpp"

#include "swipt/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace swipt {

TrialOutcome run_trial(const SystemParams& params, const DerivedParams& derived,
                       const EhModel& eh, const PsPolicy& policy,
                       const ChannelRealization& ch, RngStream& rng)
{
    const SplitPair splits = select_ratios(policy, derived, params, ch, rng);
    return evaluate_links(params, derived, eh, splits, ch);
}

namespace {

struct Counts {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t both = 0;
};

template <class Body>
void parallel_chunks(std::uint64_t n, unsigned workers, Body&& body)
{
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(n, 1)));
    if (workers <= 1) {
        body(0u, std::uint64_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = std::min(n, w * chunk);
        const std::uint64_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&body, w, lo, hi] { body(w, lo, hi); });
    }
    for (auto& t : pool)
        t.join();
}

} // namespace

OutageEstimate estimate(const SystemParams& params, const DerivedParams& derived,
                        const EhModel& eh, const PsPolicy& policy, std::uint64_t n_trials,
                        std::uint64_t seed, McOptions options)
{
    if (n_trials < 1)
        throw InvalidArgument("estimate: need at least one trial");

    unsigned workers = options.workers ? options.workers
                                       : std::max(1u, std::thread::hardware_concurrency());
    std::vector<Counts> partial(workers);
    parallel_chunks(n_trials, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
        Counts c;
        for (std::uint64_t t = lo; t < hi; ++t) {
            RngStream rng(seed, t);
            const ChannelRealization ch = sample_realization(params.lambda_a, params.lambda_b, rng);
            const TrialOutcome out = run_trial(params, derived, eh, policy, ch, rng);
            c.a += out.outage_a;
            c.b += out.outage_b;
            c.both += out.outage_a && out.outage_b;
        }
        partial[w] = c;
    });

    OutageEstimate est;
    for (const Counts& c : partial) {
        est.outages_a += c.a;
        est.outages_b += c.b;
        est.outages_both += c.both;
    }
    const double n = static_cast<double>(n_trials);
    est.n_trials = n_trials;
    est.seed = seed;
    est.p_out_a = static_cast<double>(est.outages_a) / n;
    est.p_out_b = static_cast<double>(est.outages_b) / n;
    est.stderr_a = std::sqrt(est.p_out_a * (1.0 - est.p_out_a) / n);
    est.stderr_b = std::sqrt(est.p_out_b * (1.0 - est.p_out_b) / n);
    est.capacity = capacity_total(params, est.p_out_a, est.p_out_b);

    // Var(o_A + o_B) from the joint counts.
    const double p_both = static_cast<double>(est.outages_both) / n;
    const double cov = p_both - est.p_out_a * est.p_out_b;
    const double var_sum = std::max(0.0, est.p_out_a * (1.0 - est.p_out_a) +
                                             est.p_out_b * (1.0 - est.p_out_b) + 2.0 * cov);
    est.capacity_stderr = params.rate_u * params.t_block * throughput_fraction(params) *
                          std::sqrt(var_sum / n);
    return est;
}

StaticCalibration calibrate_static(const SystemParams& params, const DerivedParams& derived,
                                   const EhModel& eh, std::uint64_t n_trials,
                                   std::uint64_t seed, McOptions options)
{
    StaticCalibration best{0.01, -1.0};
    for (int i = 1; i <= 99; ++i) {
        const double rho0 = i / 100.0;
        const OutageEstimate e = estimate(params, derived, eh, StaticEqual{rho0}, n_trials, seed, options);
        if (e.capacity > best.capacity)
            best = {rho0, e.capacity};
    }
    return best;
}

} // namespace swipt
