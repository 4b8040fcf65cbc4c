#include "swipt/units.hpp"

#include "swipt/eh_model.hpp"

#include <algorithm>
#include <cmath>

namespace swipt {

double dbm_to_watts(double dbm)
{
    if (!std::isfinite(dbm))
        throw InvalidArgument("dbm_to_watts: non-finite input");
    return std::pow(10.0, dbm / 10.0) * 1e-3;
}

double watts_to_dbm(double watts)
{
    if (!(watts > 0.0))
        throw InvalidArgument("watts_to_dbm: power must be positive");
    return 10.0 * std::log10(watts * 1e3);
}

namespace {
void require(bool ok, const char* field, const char* what)
{
    if (!ok)
        throw InvalidArgument(std::string("SystemParams.") + field + ": " + what);
}
} // namespace

void SystemParams::validate() const
{
    require(std::isfinite(p_tx) && p_tx > 0.0, "p_tx", "must be > 0");
    require(std::isfinite(sigma2) && sigma2 > 0.0, "sigma2", "must be > 0");
    require(std::isfinite(alpha) && alpha >= 1.0, "alpha", "must be >= 1");
    require(std::isfinite(d_a) && d_a > 0.0, "d_a", "must be > 0");
    require(std::isfinite(d_b) && d_b > 0.0, "d_b", "must be > 0");
    require(beta > 0.0 && beta < 0.5, "beta", "must lie in (0, 0.5)");
    require(std::isfinite(t_block) && t_block > 0.0, "t_block", "must be > 0");
    require(std::isfinite(rate_u) && rate_u > 0.0, "rate_u", "must be > 0");
    require(std::isfinite(lambda_a) && lambda_a > 0.0, "lambda_a", "must be > 0");
    require(std::isfinite(lambda_b) && lambda_b > 0.0, "lambda_b", "must be > 0");
}

DerivedParams derive(const SystemParams& params, const EhModel& eh)
{
    params.validate();
    DerivedParams d;
    d.gamma_th = std::exp2(params.rate_u) - 1.0;
    d.big_x = params.beta / (2.0 * (1.0 - 2.0 * params.beta) * params.sigma2);
    d.varpi = d.gamma_th * params.sigma2 / params.p_tx;
    d.thetas.reserve(eh.num_thresholds());
    for (double th : eh.thresholds())
        d.thetas.push_back(th / params.p_tx);
    return d;
}

double throughput_fraction(const SystemParams& params)
{
    return std::min(params.beta, 1.0 - 2.0 * params.beta);
}

} // namespace swipt
