#include "swipt/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swipt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// exp(-u / lambda) - exp(-v / lambda) for u <= v, v possibly infinite.
double exp_diff(double u, double v, double lambda)
{
    if (!(v > u))
        return 0.0;
    const double head = std::exp(-u / lambda);
    if (std::isinf(v))
        return head;
    return -head * std::expm1(-(v - u) / lambda);
}

double tail(double u, double lambda)
{
    return std::isinf(u) ? 0.0 : std::exp(-u / lambda);
}

} // namespace

double CaseCoefficients::discriminant(std::size_t j, std::size_t k) const
{
    const double b = a3(j, k);
    return b * b - 4.0 * y_a1 * y_a2.at(j);
}

std::optional<CaseCoefficients::Roots> CaseCoefficients::roots(std::size_t j, std::size_t k) const
{
    const double qa = y_a2.at(j);
    const double qb = a3(j, k);
    const double disc = discriminant(j, k);
    if (qa == 0.0 || disc < 0.0)
        return std::nullopt;
    // Citardauq form for the root that would otherwise cancel.
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (qb + std::copysign(sq, qb));
    double r1 = q / qa;
    double r2 = q != 0.0 ? y_a1 / q : -qb / (2.0 * qa);
    if (r1 > r2)
        std::swap(r1, r2);
    return Roots{r1, r2};
}

/// Per-destination view: "src" is the link whose message is delivered,
/// "dst" the link from the relay to the destination.
struct OutageAnalysis::Geometry {
    double src_pl;              // d_src^alpha
    double dst_pl;              // d_dst^alpha
    double lam_src;
    double lam_dst;
    std::vector<double> c;      // source-gain boundaries, k = 0..N+1
    std::vector<double> e;      // destination-gain boundaries, j = 0..N+1
    CaseCoefficients coef;
};

OutageAnalysis::OutageAnalysis(const SystemParams& params, const EhModel& eh,
                               AnalyticOptions options)
    : params_(params), eh_(eh), options_(options), derived_(derive(params, eh)),
      grid_(options.quad_m)
{
    for (std::size_t j = 1; j < eh_.num_thresholds(); ++j)
        if (!(eh_.slope(j) > 0.0))
            throw InvalidArgument("OutageAnalysis: interior segment " + std::to_string(j) +
                                  " must have a positive slope");
}

OutageAnalysis::Geometry OutageAnalysis::geometry(Direction dest) const
{
    const bool to_b = dest == Direction::B;
    Geometry g;
    g.src_pl = std::pow(to_b ? params_.d_a : params_.d_b, params_.alpha);
    g.dst_pl = std::pow(to_b ? params_.d_b : params_.d_a, params_.alpha);
    g.lam_src = to_b ? params_.lambda_a : params_.lambda_b;
    g.lam_dst = to_b ? params_.lambda_b : params_.lambda_a;

    const std::size_t n = eh_.num_thresholds();
    const double varpi = derived_.varpi;
    g.c.resize(n + 2);
    g.e.resize(n + 2);
    g.c[0] = varpi * g.src_pl;
    g.e[0] = varpi * g.dst_pl;
    for (std::size_t k = 1; k <= n; ++k) {
        g.c[k] = (varpi + derived_.theta(k)) * g.src_pl;
        g.e[k] = (varpi + derived_.theta(k)) * g.dst_pl;
    }
    g.c[n + 1] = kInf;
    g.e[n + 1] = kInf;

    CaseCoefficients& cc = g.coef;
    cc.n = n;
    cc.y_a1 = derived_.gamma_th * g.dst_pl * g.src_pl / (params_.p_tx * derived_.big_x);
    cc.y_a2.resize(n + 1);
    cc.y_a3.resize((n + 1) * (n + 1));
    for (std::size_t j = 0; j <= n; ++j) {
        cc.y_a2[j] = -eh_.slope(j) * g.src_pl / g.dst_pl;
        for (std::size_t k = 0; k <= n; ++k)
            cc.y_a3[j * (n + 1) + k] =
                (varpi * (eh_.slope(k) + eh_.slope(j)) -
                 (eh_.intercept(k) + eh_.intercept(j)) / params_.p_tx) *
                g.src_pl;
    }
    return g;
}

CaseCoefficients OutageAnalysis::coefficients(Direction dest) const
{
    return geometry(dest).coef;
}

double OutageAnalysis::p31(Direction dest) const
{
    const Geometry g = geometry(dest);
    return -std::expm1(-g.c[0] / g.lam_src);
}

double OutageAnalysis::offset(const Geometry& g, std::size_t j, std::size_t k) const
{
    if (options_.offset == HyperbolaOffset::DecodeFloorOnly)
        return g.c[0];
    return g.coef.a3(j, k) / eh_.slope(k);
}

// Integral over x in [x_lo, x_hi) of f_dst(x) P(c_k <= y < clamp(psi(x), c_k, c_{k+1}))
// with psi(x) = Y1 / (a_k x) + offset, which is decreasing in x.
double OutageAnalysis::hyperbolic_band(const Geometry& g, std::size_t k, double off,
                                       double x_lo, double x_hi) const
{
    const double a_k = eh_.slope(k);
    const double y1 = g.coef.y_a1;
    // psi(x) >= level  <=>  x <= crossing(level)
    auto crossing = [&](double level) {
        return level > off ? y1 / (a_k * (level - off)) : kInf;
    };
    const double d_min = std::clamp(crossing(g.c[k + 1]), x_lo, x_hi);
    double d_max = std::clamp(crossing(g.c[k]), d_min, x_hi);
    if (std::isinf(d_max)) {
        // Beyond this point exp(-x / lambda) underflows to zero.
        d_max = std::max(d_min, x_lo) + 745.0 * g.lam_dst;
    }

    const double upper = tail(g.c[k], g.lam_src) * exp_diff(x_lo, d_max, g.lam_dst);
    const double lower = tail(g.c[k + 1], g.lam_src) * exp_diff(x_lo, d_min, g.lam_dst);
    const double curved =
        grid_.integrate(
            [&](double x) {
                const double psi = y1 / (a_k * x) + off;
                return std::exp(-psi / g.lam_src - x / g.lam_dst);
            },
            d_min, d_max) /
        g.lam_dst;
    return upper - lower - curved;
}

// Interior destination segment j with the source harvester at 0 or saturated:
// the event is Y2_j x^2 + Y3_{j,k} x + Y1 > 0, i.e. x between the two roots.
double OutageAnalysis::quadratic_band(const Geometry& g, std::size_t j, std::size_t k) const
{
    const auto roots = g.coef.roots(j, k);
    if (!roots)
        return 0.0;
    const double d_min = std::min(std::max(g.e[j], roots->lo), g.e[j + 1]);
    const double d_max = std::max(std::min(g.e[j + 1], roots->hi), d_min);
    const double src_mass = k == 0 ? exp_diff(g.c[0], g.c[1], g.lam_src) : tail(g.c[k], g.lam_src);
    return src_mass * exp_diff(d_min, d_max, g.lam_dst);
}

// Interior segments on both links: the source-gain ceiling
// phi(x) = clamp((Y1 / x + Y2_j x + Y3_{j,k}) / a_k, c_k, c_{k+1}) is integrated
// over the whole destination segment.
double OutageAnalysis::interior_pair(const Geometry& g, std::size_t j, std::size_t k) const
{
    const CaseCoefficients& cc = g.coef;
    const double a_k = eh_.slope(k);
    const double y2 = cc.y_a2[j];
    const double y3 = cc.a3(j, k);
    const double lo = g.c[k];
    const double hi = g.c[k + 1];
    const double closed = exp_diff(g.e[j], g.e[j + 1], g.lam_dst) * tail(lo, g.lam_src);
    const double curved =
        grid_.integrate(
            [&](double x) {
                const double phi = std::clamp((cc.y_a1 / x + y2 * x + y3) / a_k, lo, hi);
                return std::exp(-phi / g.lam_src - x / g.lam_dst);
            },
            g.e[j], g.e[j + 1]) /
        g.lam_dst;
    return closed - curved;
}

double OutageAnalysis::p321_term(Direction dest, std::size_t k) const
{
    const std::size_t n = eh_.num_thresholds();
    if (k > n)
        throw InvalidArgument("p321_term: segment index out of range");
    const Geometry g = geometry(dest);
    double value = 0.0;
    if (k == 0) {
        value = -std::expm1(-g.e[0] / g.lam_dst) * exp_diff(g.c[0], g.c[1], g.lam_src);
    } else if (k == n) {
        const double cutoff =
            std::min(derived_.gamma_th * g.dst_pl / (eh_.p_max() * derived_.big_x), g.e[0]);
        value = tail(g.c[n], g.lam_src) * -std::expm1(-cutoff / g.lam_dst);
    } else {
        value = hyperbolic_band(g, k, offset(g, 0, k), 0.0, g.e[0]);
    }
    return std::max(value, 0.0);
}

double OutageAnalysis::p322_term(Direction dest, std::size_t j, std::size_t k) const
{
    const std::size_t n = eh_.num_thresholds();
    if (j > n || k > n)
        throw InvalidArgument("p322_term: segment index out of range");
    const Geometry g = geometry(dest);
    const double single_cutoff = derived_.gamma_th * g.dst_pl / (eh_.p_max() * derived_.big_x);
    const double src_low = exp_diff(g.c[0], g.c[1], g.lam_src);

    double value = 0.0;
    if (j == 0) {
        if (k == 0)
            value = exp_diff(g.e[0], g.e[1], g.lam_dst) * src_low;
        else if (k == n)
            value = tail(g.c[n], g.lam_src) *
                    exp_diff(g.e[0], std::clamp(single_cutoff, g.e[0], g.e[1]), g.lam_dst);
        else
            value = hyperbolic_band(g, k, offset(g, 0, k), g.e[0], g.e[1]);
    } else if (j == n) {
        if (k == 0) {
            value = exp_diff(g.e[n], std::max(single_cutoff, g.e[n]), g.lam_dst) * src_low;
        } else if (k == n) {
            const double cutoff =
                options_.double_saturation == DoubleSaturationCutoff::TwoSaturated
                    ? 0.5 * single_cutoff
                    : single_cutoff;
            value = tail(g.c[n], g.lam_src) * exp_diff(g.e[n], std::max(cutoff, g.e[n]), g.lam_dst);
        } else {
            value = hyperbolic_band(g, k, offset(g, n, k), g.e[n], kInf);
        }
    } else {
        if (k == 0 || k == n)
            value = quadratic_band(g, j, k);
        else
            value = interior_pair(g, j, k);
    }
    return std::max(value, 0.0);
}

DirectionReport OutageAnalysis::destination(Direction dest) const
{
    const std::size_t n = eh_.num_thresholds();
    DirectionReport r;
    r.p31 = p31(dest);
    r.p321.resize(n + 1);
    r.p322.resize((n + 1) * (n + 1));
    double p32 = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        r.p321[k] = p321_term(dest, k);
        p32 += r.p321[k];
    }
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t k = 0; k <= n; ++k) {
            const double v = p322_term(dest, j, k);
            r.p322[j * (n + 1) + k] = v;
            p32 += v;
        }
    r.p32 = p32;
    r.p_out = r.p31 + r.p32;
    return r;
}

OutageReport OutageAnalysis::report() const
{
    OutageReport rep;
    rep.a = destination(Direction::A);
    rep.b = destination(Direction::B);
    rep.capacity = capacity_total(params_, std::clamp(rep.a.p_out, 0.0, 1.0),
                                  std::clamp(rep.b.p_out, 0.0, 1.0));
    return rep;
}

double p31(const DerivedParams& derived, const SystemParams& params, Direction dest)
{
    const bool to_b = dest == Direction::B;
    const double d = to_b ? params.d_a : params.d_b;
    const double lam = to_b ? params.lambda_a : params.lambda_b;
    return -std::expm1(-derived.varpi * std::pow(d, params.alpha) / lam);
}

double capacity_total(const SystemParams& params, double p_out_a, double p_out_b)
{
    if (!(p_out_a >= 0.0 && p_out_a <= 1.0 && p_out_b >= 0.0 && p_out_b <= 1.0))
        throw InvalidArgument("capacity_total: outage probabilities must lie in [0, 1]");
    return (2.0 - p_out_a - p_out_b) * params.rate_u * params.t_block *
           throughput_fraction(params);
}

} // namespace swipt
