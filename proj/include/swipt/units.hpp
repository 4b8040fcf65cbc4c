#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace swipt {

class EhModel;

/// Raised for any parameter bundle that violates a model invariant.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Unit conversions. Everything inside the library is SI (W, m, s).
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
constexpr double mw_to_watts(double mw) { return mw * 1e-3; }
constexpr double uw_to_watts(double uw) { return uw * 1e-6; }
constexpr double watts_to_mw(double w) { return w * 1e3; }
constexpr double watts_to_uw(double w) { return w * 1e6; }

/// Physical and protocol parameters of the three-slot two-way relay link.
/// Both sources transmit with the same power and every receiver sees the
/// same noise variance.
struct SystemParams {
    double p_tx = 10e-3;        // W
    double sigma2 = 1e-12;      // W (-90 dBm)
    double alpha = 3.0;         // path-loss exponent
    double d_a = 15.0;          // m
    double d_b = 10.0;          // m
    double beta = 1.0 / 3.0;    // slot fraction of each uplink, (0, 0.5)
    double t_block = 1.0;       // s
    double rate_u = 3.0;        // bit/s/Hz
    double lambda_a = 1.0;      // mean of |h_A|^2
    double lambda_b = 1.0;      // mean of |h_B|^2

    /// Throws InvalidArgument naming the first offending field.
    void validate() const;
};

/// Quantities derived once from SystemParams and the harvester thresholds.
struct DerivedParams {
    double gamma_th = 0.0;          // 2^U - 1
    double big_x = 0.0;             // beta / (2 (1 - 2 beta) sigma2), 1/W
    double varpi = 0.0;             // gamma_th sigma2 / P
    std::vector<double> thetas;     // P_th^k / P, k = 1..N (index 0 is k = 1)

    /// theta_k with the 1-based index used throughout the outage analysis.
    double theta(std::size_t k) const { return thetas.at(k - 1); }
};

DerivedParams derive(const SystemParams& params, const EhModel& eh);

/// min(beta, 1 - 2 beta): the fraction of the block that limits throughput.
double throughput_fraction(const SystemParams& params);

} // namespace swipt
