#pragma once

#include <cstddef>
#include <vector>

#include "semimoment/polyring.hpp"

namespace semimoment {

/// Finite positive combination of point masses, sum_i w_i delta_{x_i}.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  /// Throws ArgumentError unless the lists are nonempty, of equal length,
  /// share one dimension and every weight is > 0.
  AtomicMeasure(std::vector<Point> points, std::vector<double> weights);

  std::size_t dim() const { return points_.empty() ? 0 : points_.front().size(); }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_mass() const;

  /// Integral of p; the plain atom sum.
  double integrate(const Polynomial& p) const;
  /// Integral of |p|-with-absolute-coefficients; a magnitude scale for round-off bounds.
  double integrate_abs(const Polynomial& p) const;

 private:
  std::vector<Point> points_;
  std::vector<double> weights_;
};

}  // namespace semimoment
