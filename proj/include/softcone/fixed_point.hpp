#pragma once

// Picard iteration for contractive self-maps of a soft cone metric space,
// with certificates carrying the a-priori and a-posteriori error bounds.
//
// Step ratio q per family:
//   banach, banach_ball, banach_power, hybrid   q = t
//   kannan, chatterjea                          q = s = t / (1 - t)
// The hybrid step bound uses d(T x_{n-1}, x_n) = Theta, which removes r.
//
// A-priori:      d(x_m, x*) <= q^m / (1 - q) d(x_1, x_0)
// A-posteriori:  d(x_n, x*) <= q / (1 - q) d(x_n, x_{n-1})

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "softcone/convergence.hpp"

namespace softcone {

/// Per-label affine data x -> M x + b, M row-major dim x dim.
struct AffineLabel {
  std::vector<double> matrix;
  std::vector<double> offset;
};

class SelfMap {
 public:
  using Apply = std::function<SoftVector(const SoftVector&)>;

  SelfMap(std::string name, std::size_t point_dim, Apply apply,
          std::optional<std::vector<AffineLabel>> affine = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  std::size_t point_dim() const noexcept { return point_dim_; }
  const std::optional<std::vector<AffineLabel>>& affine() const noexcept { return affine_; }

  /// Throws MapDomainError if the map fails or changes params/dimension.
  SoftVector operator()(const SoftVector& x) const;

 private:
  std::string name_;
  std::size_t point_dim_;
  Apply apply_;
  std::optional<std::vector<AffineLabel>> affine_;
};

/// T(x)(l) = a(l) x(l) + b(l) on soft reals.
SelfMap scalar_affine(const SoftReal& a, const SoftReal& b);
/// T(x)(l) = M_l x(l) + b_l, one entry of `per_label` per parameter.
SelfMap matrix_affine(const ParameterSet& params, std::size_t dim, std::vector<AffineLabel> per_label);
/// T^n.
SelfMap power(const SelfMap& map, std::size_t n);

/// Built-in maps: halve_plus_one (x/2 + 1), fifth (x/5), double (2x) on soft
/// reals; power_demo (M = [[0,2],[0.1,0]], b = (1,1)) on R^2.
SelfMap make_registered_map(const std::string& name, const ParameterSet& params);
bool has_registered_map(const std::string& name);

enum class Family { Banach, BanachBall, BanachPower, Kannan, Chatterjea, Hybrid };

std::string_view to_string(Family f) noexcept;
std::optional<Family> parse_family(std::string_view s) noexcept;

inline constexpr double kRatioGuard = 1e-12;

struct ContractionSpec {
  Family family = Family::Banach;
  SoftReal t;
  std::optional<SoftReal> r;             // hybrid only
  std::size_t power = 1;                 // banach_power only
  std::optional<SoftVector> ball_radius; // banach_ball only, in the metric's value space

  /// Throws OutOfRange when a constant leaves its family's range.
  void validate() const;
  /// Declared per-step contraction ratio.
  SoftReal q() const;
};

enum class ContractionStatus { Witnessed, Refuted, Assumed };

std::string_view to_string(ContractionStatus s) noexcept;

struct ContractionCheck {
  ContractionStatus status = ContractionStatus::Assumed;
  std::size_t trials = 0;
  std::optional<std::pair<SoftVector, SoftVector>> counterexample;
};

using PairSampler = std::function<std::pair<SoftVector, SoftVector>(Rng&, std::size_t trial)>;

/// Independent draws of x and y; y = x for a tenth of the trials.
PairSampler independent_pairs(PointSampler sampler);

inline constexpr double kContractionSlack = 1e-12;

/// Checks the family inequality on sampled pairs in the metric's cone order,
/// with slack kContractionSlack relative to the size of the sampled points and
/// of both sides. trials = 0 returns Assumed.
ContractionCheck verify_contraction(const SelfMap& map, const SoftConeMetric& metric, const ContractionSpec& spec,
                                    const PairSampler& sampler, std::size_t trials, std::uint64_t seed);

/// [x_0, T x_0, ..., T^k x_0].
SoftSequence iterate(const SelfMap& map, const SoftVector& x0, std::size_t k);

struct StopCriterion {
  std::optional<SoftVector> c;
  std::optional<double> norm_tol;

  static StopCriterion by_c(SoftVector c) { return {std::move(c), std::nullopt}; }
  static StopCriterion by_norm(double tol) { return {std::nullopt, tol}; }
};

enum class Uniqueness { Unique, UniqueIfTPlusRLt1, Unknown };

std::string_view to_string(Uniqueness u) noexcept;

struct FixedPointCertificate {
  Family family = Family::Banach;
  SoftReal t;
  std::optional<SoftReal> r;
  std::size_t power = 1;
  SoftReal q;

  SoftVector fixed_element;
  std::size_t iterations = 0;
  bool converged = false;
  /// x_0 .. x_iterations (iterates of T^n for the power family).
  SoftSequence iterates;
  /// d(x_n, x_{n-1}) for n = 1 .. iterations.
  std::vector<SoftVector> residuals;
  std::vector<SoftReal> residual_trail;
  SoftVector aposteriori_bound;
  Uniqueness uniqueness = Uniqueness::Unknown;
  bool contraction_witnessed = false;
  /// banach_ball: every iterate stayed in the closed ball around x_0.
  std::optional<bool> iterates_in_ball;

  /// q^m / (1 - q) d(x_1, x_0).
  SoftVector apriori_bound_at(std::size_t m) const;
};

/// Solver failure that carries the certificate built so far.
class SolveFailure : public Error {
 public:
  SolveFailure(ErrorCode code, const std::string& what, FixedPointCertificate partial)
      : Error(code, what), partial_(std::make_shared<const FixedPointCertificate>(std::move(partial))) {}
  const FixedPointCertificate& partial() const noexcept { return *partial_; }

 private:
  std::shared_ptr<const FixedPointCertificate> partial_;
};

inline constexpr std::size_t kDefaultMaxIter = 100000;

struct SolveOptions {
  std::size_t max_iter = kDefaultMaxIter;
  InnerNorm nrm = InnerNorm::Euclidean;
  /// Consecutive steps whose ratio exceeds q + ratio_slack before giving up.
  std::size_t refute_after = 10;
  double ratio_slack = 1e-9;
  /// Result of a prior verify_contraction run; a refuted check aborts.
  std::optional<ContractionCheck> contraction;
};

/// Picard iteration until the a-posteriori bound is << c or its max-label
/// norm is below norm_tol. Delegates banach_power to solve_power.
FixedPointCertificate solve(const SelfMap& map, const SoftConeMetric& metric, const ContractionSpec& spec,
                            const SoftVector& x0, const StopCriterion& stop, const SolveOptions& options = {});

/// Solves T^n, then confirms T x* = x* within the stop criterion, continuing
/// T^n iterations while d(T x, x) keeps shrinking.
FixedPointCertificate solve_power(const SelfMap& map, const SoftConeMetric& metric, const ContractionSpec& spec,
                                  const SoftVector& x0, const StopCriterion& stop, const SolveOptions& options = {});

/// max-label ||d(x*_A, x*_B)|| < tol.
bool cross_check_uniqueness(const FixedPointCertificate& a, const FixedPointCertificate& b,
                            const SoftConeMetric& metric, double tol, InnerNorm nrm = InnerNorm::Euclidean);

}  // namespace softcone
