#pragma once

// Soft cone metrics d : SE(X) x SE(X) -> SE(R^n(A)), their constructors, the
// slicing of (d4) metrics into crisp cone metrics, and the axiom engine.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "softcone/sampling.hpp"
#include "softcone/soft_cone.hpp"

namespace softcone {

/// A crisp cone metric X x X -> R^value_dim with X = R^point_dim.
struct CrispConeMetric {
  using Evaluator = std::function<std::vector<double>(std::span<const double>, std::span<const double>)>;

  std::string name;
  std::size_t point_dim = 1;
  std::size_t value_dim = 1;
  Evaluator eval;

  std::vector<double> operator()(std::span<const double> x, std::span<const double> y) const;
};

using CrispMetricFactory = std::function<CrispConeMetric(std::size_t point_dim)>;

/// Built-in crisp metrics:
///   abs       coordinate-wise |x - y|, value_dim = point_dim
///   abs2      2 |x - y| coordinate-wise
///   euclidean ||x - y||_2, value_dim = 1
///   discrete  1[x != y], value_dim = 1
CrispConeMetric crisp_metric(const std::string& name, std::size_t point_dim = 1);
void register_crisp_metric(const std::string& name, CrispMetricFactory factory);
bool has_crisp_metric(const std::string& name);

class SoftConeMetric {
 public:
  using Evaluator = std::function<SoftVector(const SoftVector&, const SoftVector&)>;

  SoftConeMetric(std::string name, ParameterSet params, std::size_t point_dim, Cone cone, Evaluator eval);

  const std::string& name() const noexcept { return name_; }
  const ParameterSet& params() const noexcept { return params_; }
  std::size_t point_dim() const noexcept { return point_dim_; }
  std::size_t value_dim() const noexcept { return cone_.dim(); }
  const Cone& cone() const noexcept { return cone_; }

  SoftVector operator()(const SoftVector& x, const SoftVector& y) const;

 private:
  std::string name_;
  ParameterSet params_;
  std::size_t point_dim_;
  Cone cone_;
  Evaluator eval_;
};

/// d(x,y) = (|x - y|, alpha |x - y|) on soft reals, valued in the orthant of R^2(A).
SoftConeMetric example_metric(const SoftReal& alpha);

/// d(x,y)(l) = d_l(x(l), y(l)). All members must share point and value dimensions.
SoftConeMetric from_family(const ParameterSet& params, const std::map<std::string, CrispConeMetric>& family);

/// The soft cone metric generated by rho.
SoftConeMetric from_crisp(const CrispConeMetric& rho, const ParameterSet& params);

using SoftMetricFactory = std::function<SoftConeMetric(const ParameterSet&, std::size_t point_dim)>;

/// Registry of named soft cone metrics that are not built from crisp parts:
///   positive_part    d(x,y) = (x - y)^+ coordinate-wise (not symmetric)
///   cross_label_max  d(x,y)(l) = max_m |x(m) - y(m)|_inf (valid, but not (d4))
SoftConeMetric make_registered_metric(const std::string& name, const ParameterSet& params, std::size_t point_dim);
void register_metric(const std::string& name, SoftMetricFactory factory);
bool has_registered_metric(const std::string& name);

struct AxiomReport {
  std::string axiom;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_violation = 0.0;
  /// Points of the first failing trial; empty iff failures == 0.
  std::vector<SoftVector> counterexample;

  bool passed() const noexcept { return failures == 0; }
};

inline constexpr double kAxiomSlack = 1e-12;

/// Randomized check of d1, d2, d3 and cone membership, one report each (in
/// that order). Trials use independently derived seeds, so results do not
/// depend on evaluation order.
std::vector<AxiomReport> check_axioms(const SoftConeMetric& metric, const PointSampler& sampler, std::size_t trials,
                                      std::uint64_t seed, double slack = kAxiomSlack);
std::vector<AxiomReport> check_axioms(const SoftConeMetric& metric, std::size_t trials, std::uint64_t seed,
                                      double slack = kAxiomSlack);

/// Thrown by slice() when two argument pairs agree at a label but the metric
/// values there differ.
class D4Violation : public Error {
 public:
  D4Violation(std::string label, SoftVector x1, SoftVector y1, SoftVector x2, SoftVector y2);

  const std::string& label() const noexcept { return label_; }
  const SoftVector& x1() const noexcept { return x1_; }
  const SoftVector& y1() const noexcept { return y1_; }
  const SoftVector& x2() const noexcept { return x2_; }
  const SoftVector& y2() const noexcept { return y2_; }

 private:
  std::string label_;
  SoftVector x1_, y1_, x2_, y2_;
};

struct SliceOptions {
  std::size_t witnesses_per_label = 100;
  std::size_t crisp_axiom_trials = 200;
  std::uint64_t seed = 0;
  PointSampler sampler;  // defaults to the uniform box [-10, 10]
};

struct SlicedMetric {
  std::map<std::string, CrispConeMetric> members;
  std::map<std::string, std::vector<AxiomReport>> crisp_axioms;
};

/// Slices a (d4) metric into its crisp family d_l(r, s) := d(x, y)(l) for any
/// x(l) = r, y(l) = s. Throws D4Violation with a witness when (d4) fails.
SlicedMetric slice(const SoftConeMetric& metric, const SliceOptions& options = {});

}  // namespace softcone
