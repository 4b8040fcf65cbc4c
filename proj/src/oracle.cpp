#include "swipt/oracle.hpp"

#include "swipt/ps_policy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace swipt {

namespace {

constexpr double kSpan = 40.0;      // truncation in units of the channel mean
constexpr int kMaxDepth = 40;
constexpr int kMinDepth = 3;

std::vector<double> scan_points(double lambda, int n)
{
    std::vector<double> pts;
    pts.reserve(2 * static_cast<std::size_t>(n) + 1);
    pts.push_back(0.0);
    const double u_max = -std::expm1(-kSpan);
    for (int i = 1; i <= n; ++i)
        pts.push_back(-lambda * std::log1p(-u_max * i / n));
    const double lo = std::log(1e-12 * lambda);
    const double hi = std::log(kSpan * lambda);
    for (int i = 0; i < n; ++i)
        pts.push_back(std::exp(lo + (hi - lo) * i / (n - 1)));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

class Integrand {
public:
    Integrand(Direction dest, const SystemParams& params, const EhModel& eh, int grid_n)
        : dest_(dest), params_(params), eh_(eh), derived_(derive(params, eh)),
          lam_src_(dest == Direction::B ? params.lambda_a : params.lambda_b),
          lam_dst_(dest == Direction::B ? params.lambda_b : params.lambda_a),
          ys_(scan_points(lam_src_, grid_n))
    {
    }

    double lam_dst() const { return lam_dst_; }
    long evaluations() const { return evaluations_; }

    bool outage(double y, double x) const
    {
        ChannelRealization ch;
        if (dest_ == Direction::B) {
            ch.gain_a = y;
            ch.gain_b = x;
        } else {
            ch.gain_a = x;
            ch.gain_b = y;
        }
        const SplitPair splits{optimal_split(derived_, ch.gain_a, params_.d_a, params_.alpha),
                               optimal_split(derived_, ch.gain_b, params_.d_b, params_.alpha)};
        const TrialOutcome t = evaluate_links(params_, derived_, eh_, splits, ch);
        return dest_ == Direction::B ? t.outage_b : t.outage_a;
    }

    /// P(outage | destination gain x), integrating over the source gain.
    double conditional(double x)
    {
        ++evaluations_;
        double mass = 0.0;
        double y_prev = ys_.front();
        bool state = outage(y_prev, x);
        double run_start = y_prev;
        for (std::size_t i = 1; i < ys_.size(); ++i) {
            const double y = ys_[i];
            const bool s = outage(y, x);
            if (s != state) {
                const double edge = bisect(y_prev, y, state, x);
                if (state)
                    mass += cdf_mass(run_start, edge);
                run_start = edge;
                state = s;
            }
            y_prev = y;
        }
        if (state)
            mass += std::exp(-run_start / lam_src_);     // run extends through the tail
        return mass;
    }

private:
    double cdf_mass(double lo, double hi) const
    {
        return std::exp(-lo / lam_src_) * -std::expm1(-(hi - lo) / lam_src_);
    }

    double bisect(double lo, double hi, bool lo_state, double x) const
    {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            if (outage(mid, x) == lo_state)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    Direction dest_;
    const SystemParams& params_;
    const EhModel& eh_;
    DerivedParams derived_;
    double lam_src_;
    double lam_dst_;
    std::vector<double> ys_;
    long evaluations_ = 0;
};

struct Simpson {
    Integrand& f;
    double lam;
    double error = 0.0;

    double at(double v) { return f.conditional(-lam * std::log1p(-v)); }

    double refine(double a, double b, double fa, double fm, double fb, double whole, double tol,
                  int depth)
    {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = at(lm);
        const double frm = at(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (depth >= kMaxDepth || (depth >= kMinDepth && std::abs(delta) <= 15.0 * tol)) {
            error += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

} // namespace

OracleResult oracle_outage(Direction dest, const SystemParams& params, const EhModel& eh,
                           int grid_n, double tolerance)
{
    if (grid_n < 100)
        throw InvalidArgument("oracle_outage: grid_n must be >= 100");
    Integrand f(dest, params, eh, grid_n);
    const double lam = f.lam_dst();
    const double v_max = -std::expm1(-kSpan);

    // Initial panels: uniform in probability plus log-spaced in gain.
    std::vector<double> edges{0.0, v_max};
    constexpr int kPanels = 64;
    for (int i = 1; i < kPanels; ++i)
        edges.push_back(v_max * i / kPanels);
    const double lo = std::log(1e-12 * lam);
    const double hi = std::log(kSpan * lam);
    for (int i = 0; i < kPanels; ++i)
        edges.push_back(-std::expm1(-std::exp(lo + (hi - lo) * i / kPanels) / lam));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Simpson s{f, lam};
    double total = 0.0;
    double f_left = s.at(edges.front());
    for (std::size_t i = 1; i < edges.size(); ++i) {
        const double a = edges[i - 1];
        const double b = edges[i];
        const double m = 0.5 * (a + b);
        const double fm = s.at(m);
        const double fb = s.at(b);
        const double whole = (b - a) / 6.0 * (f_left + 4.0 * fm + fb);
        total += s.refine(a, b, f_left, fm, fb, whole, tolerance * (b - a) / v_max, 0);
        f_left = fb;
    }

    OracleResult r;
    r.value = total;
    r.error_estimate = s.error + 2.0 * std::exp(-kSpan);
    r.evaluations = f.evaluations();
    return r;
}

} // namespace swipt
