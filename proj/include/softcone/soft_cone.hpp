#pragma once

// Soft cones in R^n(A) and the partial orders they induce.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "softcone/soft_space.hpp"

namespace softcone {

class Cone {
 public:
  enum class Kind { Orthant, Custom };
  using Predicate = std::function<bool(const SoftVector&)>;

  Cone(std::string name, Kind kind, ParameterSet params, std::size_t dim, Predicate member,
       Predicate interior_member, std::optional<SoftReal> normal_constant = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  Kind kind() const noexcept { return kind_; }
  const ParameterSet& params() const noexcept { return params_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::optional<SoftReal>& normal_constant() const noexcept { return normal_constant_; }

  /// x in (P,A). Throws on parameter/dimension mismatch.
  bool contains(const SoftVector& x) const;
  /// x in Int(P,A).
  bool interior_contains(const SoftVector& x) const;

 private:
  void check(const SoftVector& x) const;

  std::string name_;
  Kind kind_;
  ParameterSet params_;
  std::size_t dim_;
  Predicate member_;
  Predicate interior_;
  std::optional<SoftReal> normal_constant_;
};

/// The non-negative orthant {x : x_i >= 0 at every label}. Interior requires
/// every coordinate > margin. Normal constant is 1 for the euclidean, max and
/// one inner norms (all monotone on the orthant).
Cone orthant_cone(ParameterSet params, std::size_t dim, double interior_margin = 0.0);

using ConeFactory = std::function<Cone(ParameterSet, std::size_t)>;

/// Registry of named custom cones. "ray" ({x_1 >= 0, x_k = 0 for k > 1}, empty
/// interior) is built in.
void register_cone(const std::string& id, ConeFactory factory);
Cone make_registered_cone(const std::string& id, ParameterSet params, std::size_t dim);
bool has_registered_cone(const std::string& id);

enum class ConeOrder { WayBelow, Prec, Preceq, None };

std::string_view to_string(ConeOrder o) noexcept;

/// Strongest of x << y, x < y, x <= y in the cone order.
ConeOrder compare(const Cone& cone, const SoftVector& x, const SoftVector& y);

inline bool preceq(const Cone& cone, const SoftVector& x, const SoftVector& y) {
  return compare(cone, x, y) != ConeOrder::None;
}
inline bool way_below(const Cone& cone, const SoftVector& x, const SoftVector& y) {
  return compare(cone, x, y) == ConeOrder::WayBelow;
}

/// Label-wise, coordinate-wise maximum. Orthant cones only.
SoftVector sup_pair(const Cone& cone, const SoftVector& x, const SoftVector& y);
/// Folded sup_pair over a finite non-empty collection.
SoftVector sup_all(const Cone& cone, std::span<const SoftVector> xs);

enum class ConeProperty { Normal, Minihedral, StronglyMinihedral, Solid, Pointed, ClosedUnderCombination, Regular };

std::string_view to_string(ConeProperty p) noexcept;

struct ConePropertyReport {
  ConeProperty property;
  bool passed = true;
  std::size_t trials = 0;
  /// Trials that produced a usable sample (rejection sampling may skip some).
  std::size_t effective_trials = 0;
  std::vector<SoftVector> counterexample;
  std::optional<SoftVector> witness;
  /// Normal property: smallest alpha consistent with every sampled pair.
  std::optional<SoftReal> empirical_alpha;
};

/// Randomized falsification of a cone property.
ConePropertyReport cone_property_check(const Cone& cone, ConeProperty property, std::size_t trials,
                                       std::uint64_t seed, InnerNorm nrm = InnerNorm::Euclidean);

/// Empirical regularity on a user-supplied sequence: if the sequence is
/// monotone (increasing or decreasing in the cone order) it must pass the
/// norm Cauchy check at `tol`. Non-monotone sequences are vacuously accepted.
bool monotone_sequence_converges(const Cone& cone, std::span<const SoftVector> seq, double tol,
                                 InnerNorm nrm = InnerNorm::Euclidean);

}  // namespace softcone
