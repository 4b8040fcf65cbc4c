// Acceptance checks. One PASS/FAIL line per criterion.
//   acceptance            run all
//   acceptance --only N   run criterion N

#include "swipt/analytic.hpp"
#include "swipt/channel.hpp"
#include "swipt/eh_model.hpp"
#include "swipt/link.hpp"
#include "swipt/montecarlo.hpp"
#include "swipt/oracle.hpp"
#include "swipt/ps_policy.hpp"

#include <Eigen/Dense>
#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace swipt;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr std::uint64_t kTrials = 1'000'000;
const double kPowersMw[] = {0.1, 1.0, 10.0, 100.0};
const double kAlphas[] = {2.0, 2.7, 3.0};

struct Outcome {
    bool pass = false;
    std::string detail;
};

SystemParams at(double p_mw, double alpha)
{
    SystemParams p;
    p.p_tx = mw_to_watts(p_mw);
    p.alpha = alpha;
    return p;
}

Outcome c1_mc_agreement()
{
    const EhModel eh = default_eh_model();
    double worst = 0.0;
    std::string where;
    for (double pw : kPowersMw)
        for (double al : kAlphas) {
            const SystemParams p = at(pw, al);
            const OutageReport r = OutageAnalysis(p, eh).report();
            const OutageEstimate e = estimate(p, derive(p, eh), eh, OptimalDynamic{}, kTrials, kSeed);
            const double d = std::max(std::abs(r.a.p_out - e.p_out_a), std::abs(r.b.p_out - e.p_out_b));
            if (d >= worst) {
                worst = d;
                where = fmt::format("P={}mW alpha={}", pw, al);
            }
        }
    return {worst <= 0.01, fmt::format("max |analytic - MC| = {:.3g} at {} (limit 0.01, n=1e6)", worst, where)};
}

Outcome c2_oracle_equivalence()
{
    const EhModel eh = default_eh_model();
    double worst = 0.0;
    std::string where;
    for (double pw : kPowersMw)
        for (double al : kAlphas) {
            const SystemParams p = at(pw, al);
            const OutageReport r = OutageAnalysis(p, eh).report();
            const double oa = oracle_outage(Direction::A, p, eh).value;
            const double ob = oracle_outage(Direction::B, p, eh).value;
            const double d = std::max(std::abs(r.a.p_out - oa), std::abs(r.b.p_out - ob));
            if (d >= worst) {
                worst = d;
                where = fmt::format("P={}mW alpha={}", pw, al);
            }
        }

    // both-saturated cutoff, on a link where that cell carries mass
    SystemParams s;
    s.p_tx = 1.0;
    s.alpha = 2.0;
    s.sigma2 = dbm_to_watts(-35.0);
    s.d_a = s.d_b = 1.0;
    const double truth = oracle_outage(Direction::B, s, eh).value;
    AnalyticOptions two, one;
    one.double_saturation = DoubleSaturationCutoff::OneSaturated;
    const double d_two = std::abs(OutageAnalysis(s, eh, two).destination(Direction::B).p_out - truth);
    const double d_one = std::abs(OutageAnalysis(s, eh, one).destination(Direction::B).p_out - truth);
    const bool pass = worst <= 1e-4 && d_two <= 1e-4;
    return {pass, fmt::format("max |analytic(M=10) - oracle| = {:.3g} at {} (limit 1e-4); "
                              "saturated pair cutoff: 2*P_m off by {:.2g}, P_m off by {:.2g} -> {}",
                              worst, where, d_two, d_one, d_two < d_one ? "2*P_m" : "P_m")};
}

Outcome c3_error_floor()
{
    const EhModel eh = default_eh_model();
    SystemParams p;
    p.p_tx = 1.0;
    const OutageReport r1 = OutageAnalysis(p, eh).report();
    p.p_tx = 10.0;
    const OutageReport r10 = OutageAnalysis(p, eh).report();
    const double d = std::max(std::abs(r1.a.p_out - r10.a.p_out), std::abs(r1.b.p_out - r10.b.p_out));
    const bool pos = r1.a.p_out > 0 && r1.b.p_out > 0 && r10.a.p_out > 0 && r10.b.p_out > 0;
    return {pos && d < 1e-3, fmt::format("P_out^B(1 W) = {:.6g}, P_out^B(10 W) = {:.6g}, max diff {:.3g} (limit 1e-3)",
                                         r1.b.p_out, r10.b.p_out, d)};
}

Outcome c4_quadrature()
{
    const EhModel eh = default_eh_model();
    AnalyticOptions m10, m200;
    m10.quad_m = 10;
    m200.quad_m = 200;
    const OutageReport a = OutageAnalysis(SystemParams{}, eh, m10).report();
    const OutageReport b = OutageAnalysis(SystemParams{}, eh, m200).report();
    const double d = std::max(std::abs(a.a.p_out - b.a.p_out), std::abs(a.b.p_out - b.b.p_out));
    return {d <= 1e-4, fmt::format("|M=10 - M=200| = {:.3g} (limit 1e-4)", d)};
}

Outcome c5_policy_ordering()
{
    const EhModel eh = default_eh_model();
    bool pass = true;
    std::string detail;
    for (double pw : kPowersMw) {
        SystemParams p;
        p.p_tx = mw_to_watts(pw);
        const DerivedParams d = derive(p, eh);
        const OutageEstimate opt = estimate(p, d, eh, OptimalDynamic{}, kTrials, kSeed);
        const StaticCalibration cal = calibrate_static(p, d, eh, 100'000, kSeed + 1);
        const OutageEstimate st = estimate(p, d, eh, StaticEqual{cal.rho0}, kTrials, kSeed);
        const OutageEstimate rnd = estimate(p, d, eh, RandomUniform{}, kTrials, kSeed);
        double margin = 1e300;
        for (const OutageEstimate* b : {&st, &rnd}) {
            const double se = std::hypot(opt.capacity_stderr, b->capacity_stderr);
            margin = std::min(margin, (opt.capacity - b->capacity + 3 * se));
            pass = pass && opt.capacity >= b->capacity - 3 * se;
        }
        detail += fmt::format("{}P={}mW opt {:.4g} static({:.2f}) {:.4g} random {:.4g}", detail.empty() ? "" : "; ",
                              pw, opt.capacity, cal.rho0, st.capacity, rnd.capacity);
    }
    return {pass, detail};
}

// index of a unique extreme value that is neither first nor last, or -1
int strict_interior(const std::vector<double>& v, bool maximum)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (maximum ? v[i] > v[best] : v[i] < v[best])
            best = i;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (i != best && v[i] == v[best])
            return -1;
    if (best == 0 || best + 1 == v.size())
        return -1;
    return static_cast<int>(best);
}

std::string seq(const std::vector<double>& v)
{
    std::string s;
    for (double x : v)
        s += fmt::format("{}{:.4g}", s.empty() ? "" : " ", x);
    return s;
}

Outcome c6_rate_shape()
{
    const EhModel eh = default_eh_model();
    std::vector<double> an, mc;
    for (int i = 1; i <= 12; ++i) {
        SystemParams p;
        p.rate_u = 0.5 * i;
        an.push_back(OutageAnalysis(p, eh).report().capacity);
        mc.push_back(estimate(p, derive(p, eh), eh, OptimalDynamic{}, kTrials, kSeed).capacity);
    }
    const int ia = strict_interior(an, true);
    const int im = strict_interior(mc, true);
    return {ia >= 0 && im >= 0,
            fmt::format("U=0.5..6 analytic [{}] argmax {}; MC [{}] argmax {}", seq(an),
                        ia >= 0 ? fmt::format("U={}", 0.5 * (ia + 1)) : "at boundary", seq(mc),
                        im >= 0 ? fmt::format("U={}", 0.5 * (im + 1)) : "at boundary")};
}

Outcome c7_distance_shape()
{
    const EhModel eh = default_eh_model();
    const double grid[] = {2, 5, 8, 11, 12.5, 14, 17, 20, 23};
    std::vector<double> an, mc;
    for (double da : grid) {
        SystemParams p;
        p.d_a = da;
        p.d_b = 25.0 - da;
        an.push_back(OutageAnalysis(p, eh).report().capacity);
        mc.push_back(estimate(p, derive(p, eh), eh, OptimalDynamic{}, kTrials, kSeed).capacity);
    }
    const int ia = strict_interior(an, false);
    const int im = strict_interior(mc, false);
    return {ia >= 0 && im >= 0,
            fmt::format("d_A=2..23 analytic [{}] argmin {}; MC [{}] argmin {}", seq(an),
                        ia >= 0 ? fmt::format("{}", grid[ia]) : "at boundary", seq(mc),
                        im >= 0 ? fmt::format("{}", grid[im]) : "at boundary")};
}

Outcome c8_binding()
{
    const EhModel eh = default_eh_model();
    RngStream rng(kSeed, 0);
    double worst = 0.0;
    long binding = 0;
    for (int i = 0; i < 100'000; ++i) {
        SystemParams p;
        p.p_tx = std::pow(10.0, -4.0 + 6.0 * rng.next_uniform());
        p.alpha = 2.0 + rng.next_uniform();
        p.rate_u = 0.5 + 5.5 * rng.next_uniform();
        p.d_a = 1.0 + 24.0 * rng.next_uniform();
        p.d_b = 1.0 + 24.0 * rng.next_uniform();
        const DerivedParams d = derive(p, eh);
        const ChannelRealization ch = sample_realization(1.0, 1.0, rng);
        for (auto [g, dist] : {std::pair{ch.gain_a, p.d_a}, std::pair{ch.gain_b, p.d_b}}) {
            const PowerSplit s = optimal_split(d, g, dist, p.alpha);
            if (!(s.harvest > 0.0))
                continue;
            ++binding;
            worst = std::max(worst, std::abs(relay_snr(p, g, dist, s) / d.gamma_th - 1.0));
        }
    }
    return {binding > 0 && worst <= 1e-12,
            fmt::format("{} binding links, max relative |SNR/gamma_th - 1| = {:.3g} (limit 1e-12)", binding, worst)};
}

Outcome c9_case_partition()
{
    const EhModel eh = default_eh_model();
    const SystemParams p;
    const DerivedParams d = derive(p, eh);
    const OutageAnalysis an(p, eh);
    const std::size_t n_seg = eh.num_thresholds() + 1;

    struct Cells {
        std::uint64_t p31 = 0;
        std::vector<std::uint64_t> p321, p322;
    };
    Cells cb{0, std::vector<std::uint64_t>(n_seg), std::vector<std::uint64_t>(n_seg * n_seg)};
    Cells ca = cb;
    const double pa = p.p_tx * std::pow(p.d_a, -p.alpha);
    const double pb = p.p_tx * std::pow(p.d_b, -p.alpha);
    for (std::uint64_t t = 0; t < kTrials; ++t) {
        RngStream rng(kSeed, t);
        const ChannelRealization ch = sample_realization(p.lambda_a, p.lambda_b, rng);
        const TrialOutcome o = run_trial(p, d, eh, OptimalDynamic{}, ch, rng);
        const std::size_t seg_a = eh.segment_index(o.rho_a * pa * ch.gain_a);
        const std::size_t seg_b = eh.segment_index(o.rho_b * pb * ch.gain_b);
        // destination B: source A
        if (!o.relay_decode_a)
            ++cb.p31;
        else if (o.outage_b)
            ++(o.rho_b > 0.0 ? cb.p322[seg_b * n_seg + seg_a] : cb.p321[seg_a]);
        if (!o.relay_decode_b)
            ++ca.p31;
        else if (o.outage_a)
            ++(o.rho_a > 0.0 ? ca.p322[seg_a * n_seg + seg_b] : ca.p321[seg_b]);
    }

    const double n = static_cast<double>(kTrials);
    int cells = 0, bad = 0;
    double worst_z = 0.0;
    std::string worst_cell;
    auto check = [&](const std::string& name, double term, std::uint64_t count) {
        const double sd = std::sqrt(term * (1.0 - term) / n);
        const double diff = std::abs(static_cast<double>(count) / n - term);
        ++cells;
        const double z = sd > 0 ? diff / sd : (diff > 0 ? 1e300 : 0.0);
        if (diff > 3 * sd)
            ++bad;
        if (z >= worst_z) {
            worst_z = z;
            worst_cell = name;
        }
    };
    for (auto [dir, cnt, tag] : {std::tuple{Direction::B, &cb, "B"}, std::tuple{Direction::A, &ca, "A"}}) {
        const DirectionReport r = an.destination(dir);
        check(fmt::format("{}:p31", tag), r.p31, cnt->p31);
        for (std::size_t k = 0; k < n_seg; ++k)
            check(fmt::format("{}:p321[{}]", tag, k), r.p321[k], cnt->p321[k]);
        for (std::size_t j = 0; j < n_seg; ++j)
            for (std::size_t k = 0; k < n_seg; ++k)
                check(fmt::format("{}:p322[{}][{}]", tag, j, k), r.p322_at(j, k), cnt->p322[j * n_seg + k]);
    }
    return {bad == 0, fmt::format("{} cells, {} outside 3 sd, largest deviation {:.2f} sd at {}", cells, bad, worst_z,
                                  worst_cell)};
}

Outcome c10_regression()
{
    const EhModel truth = default_eh_model();
    EhDataset clean;
    clean.breakpoints.assign(truth.thresholds().begin(), truth.thresholds().end());
    for (int i = 0; i < 400; ++i) {
        const double x = 1e-6 * (2.0 + 1198.0 * i / 399.0);
        clean.points.emplace_back(x, truth.segment_line(x));
    }
    const EhModel fit = fit_segments(clean);
    double rel = std::abs(fit.p_max() / truth.p_max() - 1.0);
    for (std::size_t j = 1; j < truth.num_thresholds(); ++j) {
        rel = std::max(rel, std::abs(fit.slope(j) / truth.slope(j) - 1.0));
        rel = std::max(rel, std::abs(fit.intercept(j) / truth.intercept(j) - 1.0));
    }

    // noisy data against plain normal equations
    std::mt19937_64 gen(kSeed);
    std::normal_distribution<double> noise(0.0, 2e-6);
    EhDataset noisy;
    noisy.breakpoints = clean.breakpoints;
    for (const auto& [x, y] : clean.points)
        noisy.points.emplace_back(x, y + noise(gen));
    const EhModel nfit = fit_segments(noisy);
    double worst_z = 0.0;
    for (std::size_t j = 1; j < truth.num_thresholds(); ++j) {
        std::vector<std::pair<double, double>> seg;
        for (const auto& pt : noisy.points)
            if (truth.segment_index(pt.first) == j)
                seg.push_back(pt);
        const auto m = static_cast<Eigen::Index>(seg.size());
        Eigen::MatrixXd X(m, 2);
        Eigen::VectorXd y(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            X(i, 0) = seg[static_cast<std::size_t>(i)].first;
            X(i, 1) = 1.0;
            y(i) = seg[static_cast<std::size_t>(i)].second;
        }
        const Eigen::Matrix2d xtx = X.transpose() * X;
        const Eigen::Vector2d b = xtx.ldlt().solve(X.transpose() * y);
        const double s2 = (y - X * b).squaredNorm() / static_cast<double>(m - 2);
        const Eigen::Matrix2d cov = s2 * xtx.inverse();
        worst_z = std::max(worst_z, std::abs(nfit.slope(j) - b(0)) / std::sqrt(cov(0, 0)));
        worst_z = std::max(worst_z, std::abs(nfit.intercept(j) - b(1)) / std::sqrt(cov(1, 1)));
    }
    return {rel <= 1e-9 && worst_z <= 3.0,
            fmt::format("noiseless max relative error {:.3g} (limit 1e-9); noisy fit vs normal equations {:.3g} se "
                        "(limit 3)",
                        rel, worst_z)};
}

} // namespace

int main(int argc, char** argv)
{
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else {
            fmt::print(stderr, "usage: acceptance [--only N]\n");
            return 2;
        }
    }

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"analytic vs Monte-Carlo", c1_mc_agreement},
        {"analytic vs oracle", c2_oracle_equivalence},
        {"error floor", c3_error_floor},
        {"quadrature order", c4_quadrature},
        {"policy ordering", c5_policy_ordering},
        {"capacity vs rate peak", c6_rate_shape},
        {"capacity vs distance dip", c7_distance_shape},
        {"binding relay SNR", c8_binding},
        {"case partition", c9_case_partition},
        {"harvester regression", c10_regression},
    };

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (only && only != id)
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        fmt::print("[{}] criterion {:2} {}: {} ({:.1f} s)\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                   o.detail, secs);
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
