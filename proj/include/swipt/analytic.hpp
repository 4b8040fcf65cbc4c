#pragma once

#include "swipt/eh_model.hpp"
#include "swipt/link.hpp"
#include "swipt/quadrature.hpp"
#include "swipt/units.hpp"

#include <optional>
#include <vector>

namespace swipt {

/// Offset s of the hyperbolic source-gain boundary y < Y1 / (a_k x) + s used
/// by the (k), (0,k) and (N,k) case families.
enum class HyperbolaOffset {
    /// s = Y3_{j,k} / a_k: intercepts of both active segments included. This
    /// is the exact boundary of the outage event.
    WithIntercepts,
    /// s = varpi d_src^alpha: intercepts dropped. Kept only to quantify how
    /// far that simplification is from the exact event.
    DecodeFloorOnly,
};

/// Destination-gain cutoff when both harvesters are saturated.
enum class DoubleSaturationCutoff {
    /// gamma_th d^alpha / (2 P_m X): total harvest 2 P_m. Exact.
    TwoSaturated,
    /// gamma_th d^alpha / (P_m X), mirroring the single-saturation siblings.
    OneSaturated,
};

struct AnalyticOptions {
    int quad_m = 10;
    HyperbolaOffset offset = HyperbolaOffset::WithIntercepts;
    DoubleSaturationCutoff double_saturation = DoubleSaturationCutoff::TwoSaturated;
};

/// Coefficients of the destination-outage inequality
///   a_k y < Y1 / x + Y2_j x + Y3_{j,k}
/// where y is the source-link gain and x the destination-link gain.
struct CaseCoefficients {
    std::size_t n = 0;              // number of thresholds N
    double y_a1 = 0.0;              // gamma_th d_dst^a d_src^a / (P X)
    std::vector<double> y_a2;       // j = 0..N: -a_j d_src^a / d_dst^a
    std::vector<double> y_a3;       // (j, k) row-major, (N+1)^2 entries

    double a3(std::size_t j, std::size_t k) const { return y_a3[j * (n + 1) + k]; }
    double discriminant(std::size_t j, std::size_t k) const;

    struct Roots {
        double lo;
        double hi;
    };
    /// Real roots of Y2_j x^2 + Y3_{j,k} x + Y1 = 0, ordered; empty when the
    /// discriminant is negative or the quadratic degenerates.
    std::optional<Roots> roots(std::size_t j, std::size_t k) const;
};

/// Outage of one destination split by event.
struct DirectionReport {
    double p31 = 0.0;                   // relay fails to decode the incoming message
    std::vector<double> p321;           // k = 0..N, destination split ratio 0
    std::vector<double> p322;           // (j, k) row-major, destination ratio optimal
    double p32 = 0.0;                   // sum of all p321 and p322 terms
    double p_out = 0.0;                 // p31 + p32

    double p322_at(std::size_t j, std::size_t k) const { return p322[j * p321.size() + k]; }
};

struct OutageReport {
    DirectionReport a;                  // outage at destination A
    DirectionReport b;                  // outage at destination B
    double capacity = 0.0;              // bits over the block
};

/// Closed-form outage of the optimal dynamic split, with Chebyshev-Gauss
/// quadrature for the integrals that have no elementary antiderivative.
///
/// All quantities are formulated for destination B (source A). Destination
/// A uses the same expressions with the roles of the two links swapped.
class OutageAnalysis {
public:
    OutageAnalysis(const SystemParams& params, const EhModel& eh, AnalyticOptions options = {});

    const DerivedParams& derived() const { return derived_; }
    const AnalyticOptions& options() const { return options_; }
    std::size_t n() const { return eh_.num_thresholds(); }

    CaseCoefficients coefficients(Direction dest) const;

    double p31(Direction dest) const;
    double p321_term(Direction dest, std::size_t k) const;
    double p322_term(Direction dest, std::size_t j, std::size_t k) const;

    DirectionReport destination(Direction dest) const;
    OutageReport report() const;

private:
    struct Geometry;
    Geometry geometry(Direction dest) const;

    double hyperbolic_band(const Geometry& g, std::size_t k, double offset, double x_lo,
                           double x_hi) const;
    double quadratic_band(const Geometry& g, std::size_t j, std::size_t k) const;
    double interior_pair(const Geometry& g, std::size_t j, std::size_t k) const;
    double offset(const Geometry& g, std::size_t j, std::size_t k) const;

    SystemParams params_;
    EhModel eh_;
    AnalyticOptions options_;
    DerivedParams derived_;
    QuadratureGrid grid_;
};

double p31(const DerivedParams& derived, const SystemParams& params, Direction dest = Direction::B);

/// (2 - P_out^A - P_out^B) U T min(beta, 1 - 2 beta).
double capacity_total(const SystemParams& params, double p_out_a, double p_out_b);

} // namespace swipt
