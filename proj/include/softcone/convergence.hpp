#pragma once

// Sequence analysis in a soft cone metric space.
//
// Sequences are indexed from 1 as x_1, x_2, ..., x_L. A reported index N
// means the property holds for every n > N within the finite sequence.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "softcone/soft_cone_metric.hpp"

namespace softcone {

using SoftSequence = std::vector<SoftVector>;

enum class Verdict { Converged, CauchyOnly, Inconclusive, Diverged };

std::string_view to_string(Verdict v) noexcept;

struct ConvergenceReport {
  Verdict verdict = Verdict::Inconclusive;
  SoftVector witness_c;
  std::optional<std::size_t> index;
  /// ||d(x_n, limit)|| for converges_to, ||d(x_n, x_{n-1})|| for is_cauchy.
  std::vector<SoftReal> residual_trail;

  bool converged() const noexcept { return verdict == Verdict::Converged; }
  bool cauchy() const noexcept { return verdict == Verdict::Converged || verdict == Verdict::CauchyOnly; }
};

inline constexpr std::size_t kDivergenceWindow = 10;
inline constexpr std::size_t kDefaultLadderRungs = 6;

/// Smallest N with d(x_n, limit) << c for all n > N; at least two terms must
/// remain beyond N for a converged verdict.
ConvergenceReport converges_to(std::span<const SoftVector> seq, const SoftVector& limit, const SoftConeMetric& metric,
                               const SoftVector& c, InnerNorm nrm = InnerNorm::Euclidean);

/// Smallest N with d(x_n, x_m) << c for all n, m > N; at least two terms must
/// remain beyond N.
ConvergenceReport is_cauchy(std::span<const SoftVector> seq, const SoftConeMetric& metric, const SoftVector& c,
                            InnerNorm nrm = InnerNorm::Euclidean);

/// c, c/2, ..., c/2^rungs.
std::vector<SoftVector> c_ladder(const SoftVector& c, std::size_t rungs = kDefaultLadderRungs);

struct NormEquivalenceReport {
  bool cone_verdict = false;
  bool norm_verdict = false;
  /// max over labels of alpha ||c_k|| for the smallest rung used.
  double transferred_bound = 0.0;
  std::size_t rungs = 0;

  bool agree() const noexcept { return cone_verdict == norm_verdict; }
};

/// Runs the cone-order detector on a shrinking ladder from `c` (extended until
/// alpha ||c_k|| < tol) and the norm detector ||d(x_n, x)|| < tol over the
/// trailing window. Both must hold over at least that window.
NormEquivalenceReport norm_equivalence_check(std::span<const SoftVector> seq, const SoftVector& limit,
                                             const SoftConeMetric& metric, InnerNorm nrm, double tol,
                                             const SoftVector& c, std::size_t rungs = kDefaultLadderRungs);

/// Both claimed limits must converge on the ladder from `c` (PreconditionFailed
/// otherwise). Returns true iff max-label ||d(x, y)|| < tol.
bool unique_limit_check(std::span<const SoftVector> seq, const SoftVector& x, const SoftVector& y,
                        const SoftConeMetric& metric, const SoftVector& c, double tol,
                        InnerNorm nrm = InnerNorm::Euclidean);

/// Long-format residual trace: n,label,coordinate,residual_value.
void write_residual_csv(std::ostream& os, std::span<const SoftVector> residuals);
/// n,residual_maxnorm.
void write_maxnorm_csv(std::ostream& os, std::span<const SoftVector> residuals, InnerNorm nrm = InnerNorm::Euclidean);

}  // namespace softcone
