#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semimoment/measure.hpp"
#include "semimoment/moment.hpp"
#include "semimoment/semialg.hpp"
#include "semimoment/univariate.hpp"

namespace semimoment {

inline constexpr double kFiberGroupingTolerance = 1e-12;

/// Distinct values lambda = h(x) over the atoms, ordered lexicographically,
/// with the mass nu_lambda sitting on each and the atoms realizing it.
struct Pushforward {
  std::vector<Point> support;
  std::vector<double> masses;
  /// groups[g] lists the atom indices with h(x) = support[g].
  std::vector<std::vector<std::size_t>> groups;
};

/// Groups atoms whose h-values agree componentwise within
/// 1e-12 * max(1, |value|); exact ties always group.
Pushforward pushforward(const AtomicMeasure& mu, std::span<const Polynomial> h);

struct Fiber {
  Point lambda;
  double mass = 0.0;
  AtomicMeasure atoms;  // original weights
  MomentFunctional functional;  // normalized, L_lambda(1) = 1
};

struct FiberDecomposition {
  std::vector<Polynomial> h;
  std::vector<Fiber> fibers;
};

/// L_lambda = (1 / nu_lambda) sum_{x in fiber} w_x delta_x, up to degree max_degree.
FiberDecomposition fiber_functionals(const AtomicMeasure& mu, std::span<const Polynomial> h, unsigned max_degree);

/// |L(q(h) p) - sum_lambda nu_lambda q(lambda) L_lambda(p)| with L the
/// functional of mu. q lives in h.size() variables, p in mu.dim().
double disintegration_residual(const AtomicMeasure& mu, std::span<const Polynomial> h, const Polynomial& q,
                               const Polynomial& p, unsigned max_degree);

/// Round-off scale for the residual above: the integral of q(h) p with all
/// coefficients and coordinates taken in absolute value, at least 1.
double disintegration_scale(const AtomicMeasure& mu, std::span<const Polynomial> h, const Polynomial& q,
                            const Polynomial& p);

struct LineSolve {
  LineGeometry line;
  MomentVector1D moments;
  std::optional<QuadratureResult> quadrature;
  std::string error;
  bool pass = false;
};

struct FiberReport {
  Point lambda;
  double mass = 0.0;
  std::size_t atom_count = 0;
  FiberClass cls = FiberClass::other;
  bool empty = false;
  std::string note;
  std::optional<PositivityReport> positivity;
  std::optional<LineSolve> line_solve;
  bool pass = false;
};

struct Theorem1Report {
  PositivityReport base;
  std::vector<FiberReport> fibers;
  bool pass = false;
};

inline constexpr double kLineMomentMatchTol = 1e-8;

/// Fiber-by-fiber evidence for the reduction of the moment problem on K_f to
/// the fiber sets K_f cap {h = lambda}.
///
/// (a) L = functional of mu checked on T_f at level n; (b) each fiber
/// functional L_lambda checked on the augmented preorder T_{f(lambda)} at level
/// n; (c) line fibers (per the classifier) restricted to their line and
/// reconstructed by quadrature, moment match <= 1e-8. Both functionals carry
/// degree 2n plus the largest preorder-product degree. Points of
/// extra_lambdas with no atom are reported as empty fibers and pass.
/// MembershipError if an atom lies outside K_f.
Theorem1Report theorem1_pipeline(const SemiAlgebraicSet& K, const BoundedPolySpec& h, const AtomicMeasure& mu,
                                 unsigned n, double tol = kDefaultPsdTol, const FiberClassifier& classify = {},
                                 std::span<const Point> extra_lambdas = {});

}  // namespace semimoment
