#pragma once

#include "swipt/units.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace swipt {

/// Chebyshev-Gauss nodes z_m = cos((2m - 1) pi / (2M)) with the
/// sqrt(1 - z_m^2) factor folded into the weight, so that
///   int_{t1}^{t2} f ~= (t2 - t1)/2 * sum_m (pi/M) sqrt(1 - z_m^2) f(xi_m).
class QuadratureGrid {
public:
    explicit QuadratureGrid(int m_points)
    {
        if (m_points < 1)
            throw InvalidArgument("QuadratureGrid: need at least one node");
        nodes_.reserve(static_cast<std::size_t>(m_points));
        weights_.reserve(static_cast<std::size_t>(m_points));
        const double m = static_cast<double>(m_points);
        for (int i = 1; i <= m_points; ++i) {
            const double z = std::cos((2.0 * i - 1.0) * std::numbers::pi / (2.0 * m));
            nodes_.push_back(z);
            weights_.push_back(std::numbers::pi / m * std::sqrt(1.0 - z * z));
        }
    }

    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }

    template <class F>
    double integrate(F&& f, double t1, double t2) const
    {
        if (t1 > t2)
            throw InvalidArgument("gauss_chebyshev: lower limit exceeds upper limit");
        if (t1 == t2)
            return 0.0;
        const double half = 0.5 * (t2 - t1);
        const double mid = 0.5 * (t2 + t1);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            sum += weights_[i] * f(half * nodes_[i] + mid);
        return half * sum;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

template <class F>
double gauss_chebyshev(F&& f, double t1, double t2, int m)
{
    return QuadratureGrid(m).integrate(std::forward<F>(f), t1, t2);
}

} // namespace swipt
