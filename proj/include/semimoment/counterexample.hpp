#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "semimoment/moment.hpp"
#include "semimoment/univariate.hpp"

namespace semimoment {

/// A functional L on R[t] with L(p^2 + t^3 q^2) >= 0 in low degree but
/// L(t) = -delta, lifted to the cusp curve x1^3 = x2^2 in the plane.

struct SeedSpec {
  unsigned n = 3;  // seed moments m_0..m_2n
  double delta = 0.1;
  std::size_t max_iter = 5000;  // per scale
  double tol = 1e-7;
  /// Optional starting moments; shorter vectors are padded with zeros.
  std::vector<double> warm_start;
};

inline constexpr double kSeedFloor = 1e-3;
inline constexpr double kSeedTargetDelta = 0.01;

/// Moments m_0..m_2n with m_0 = 1, m_1 = -delta, a PSD Hankel matrix and a PSD
/// t^3-localized Hankel matrix (entries m_{i+j+3}, size n - 1).
///
/// Alternating projections in Dykstra's cyclic form over the two Hankel cones
/// (eigenvalue clipping, floor kSeedFloor) and the affine set of Hankel pairs
/// with the two fixed moments (anti-diagonal averaging). The search runs on
/// rescaled moments m_k / s^k for a few scales s around delta / kSeedTargetDelta.
/// The returned vector has both minimum eigenvalues >= 0 as computed by
/// hankel_min_eig and localized_hankel_min_eig; NonConvergenceError otherwise.
MomentVector1D find_seed(const SeedSpec& spec);

/// Largest violation of the seed constraints: affine defects and negative
/// parts of the two minimum eigenvalues.
double seed_residual(const MomentVector1D& m, double delta);

/// L1(t^(2k)) = m_k, odd moments exactly 0; length 4n + 1.
MomentVector1D lift_even(const MomentVector1D& m);

/// L2(x1^a x2^b) = m1[2a + 3b], a two-variable functional with variable
/// weights (2, 3) and weighted budget m1.size() - 1 (rounded down to even).
MomentFunctional lift_curve(const MomentVector1D& m1);

struct CertificateLeg {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct LiftedFunctionals {
  std::optional<MomentVector1D> seed;
  std::optional<MomentVector1D> even_lift;
  MomentFunctional curve;
};

struct CounterexampleCertificate {
  std::optional<MomentVector1D> seed;
  std::optional<MomentVector1D> even_lift;
  MomentFunctional curve;
  unsigned t = 0;
  double tol = 0.0;
  std::optional<EigenCheck> hankel;
  std::optional<EigenCheck> localized;
  EigenCheck moment_matrix;
  /// L2((x1^3 - x2^2) r) for r = 1, x1, x2 as far as the budget reaches.
  std::vector<double> annihilation_values;
  double annihilation_square = 0.0;
  std::size_t curve_samples = 0;
  double curve_min_x1 = 0.0;
  std::vector<CertificateLeg> legs;
  double witness = 0.0;  // L2(x1)
  bool is_counterexample = false;
  std::string note;
};

inline constexpr std::size_t kCurveSamples = 64;

/// Checks every leg and assembles the certificate. Throws VerificationError
/// naming the first failed leg and DegreeError if M_t(L2) does not fit the
/// budget (6t > 4n for a lifted seed). The witness sign is not a leg: a
/// nonnegative L2(x1) yields a certificate with is_counterexample = false.
CounterexampleCertificate verify(const LiftedFunctionals& lifted, unsigned t, double tol);

}  // namespace semimoment
