#pragma once

// The soft Banach space R^n(A).

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "softcone/soft_core.hpp"

namespace softcone {

/// A soft vector: one n-tuple of finite reals per parameter, stored label-major.
class SoftVector {
 public:
  SoftVector(ParameterSet params, std::size_t dim, std::vector<double> values);

  /// Null soft vector Theta.
  static SoftVector zero(ParameterSet params, std::size_t dim);
  /// Same tuple at every label.
  static SoftVector constant(ParameterSet params, std::span<const double> tuple);
  /// n = 1 view of a soft real.
  static SoftVector from_real(const SoftReal& r);

  const ParameterSet& params() const noexcept { return params_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t labels() const noexcept { return params_.size(); }

  std::span<const double> at(std::size_t label) const {
    return std::span<const double>(values_).subspan(label * dim_, dim_);
  }
  std::span<const double> at(std::string_view label) const { return at(params_.index_of(label)); }
  double operator()(std::size_t label, std::size_t coord) const { return values_[label * dim_ + coord]; }
  std::span<const double> flat() const noexcept { return values_; }

  /// Copy with the tuple at `label` replaced.
  SoftVector with(std::size_t label, std::span<const double> tuple) const;
  /// Coordinate `coord` as a soft real.
  SoftReal component(std::size_t coord) const;

  bool is_zero() const noexcept;

  friend bool operator==(const SoftVector& a, const SoftVector& b) {
    return a.params_ == b.params_ && a.dim_ == b.dim_ && a.values_ == b.values_;
  }

 private:
  ParameterSet params_;
  std::size_t dim_;
  std::vector<double> values_;
};

void require_compatible(const SoftVector& x, const SoftVector& y);

enum class VecOp { Add, Sub, ScalarMulSoft, Neg };

/// Label-wise tuple arithmetic. ScalarMulSoft multiplies the tuple at each
/// label by `scalar(label)`.
SoftVector vec_arith(VecOp kind, const SoftVector& x, const SoftVector* y = nullptr,
                     const SoftReal* scalar = nullptr);

SoftVector operator+(const SoftVector& x, const SoftVector& y);
SoftVector operator-(const SoftVector& x, const SoftVector& y);
SoftVector operator-(const SoftVector& x);
SoftVector operator*(const SoftReal& a, const SoftVector& x);
SoftVector operator*(double a, const SoftVector& x);

/// Per-label norm applied to the n-tuple.
enum class InnerNorm { Euclidean, Max, One };

std::string_view to_string(InnerNorm n) noexcept;
std::optional<InnerNorm> parse_inner_norm(std::string_view s) noexcept;

double inner_norm(std::span<const double> tuple, InnerNorm nrm) noexcept;

/// Soft norm: ||x||(l) = inner_norm(x(l)).
SoftReal norm(const SoftVector& x, InnerNorm nrm = InnerNorm::Euclidean);

/// max over labels of ||x||(l).
double max_label_norm(const SoftVector& x, InnerNorm nrm = InnerNorm::Euclidean);

/// Norm-induced soft metric d(x,y) = ||x - y||.
SoftReal norm_metric(const SoftVector& x, const SoftVector& y, InnerNorm nrm = InnerNorm::Euclidean);

enum class BallKind { Open, Closed, Sphere };

struct Ball {
  SoftVector center;
  SoftReal radius;
  BallKind kind = BallKind::Open;

  Ball(SoftVector c, SoftReal r, BallKind k);
};

bool ball_contains(const Ball& b, const SoftVector& y, InnerNorm nrm = InnerNorm::Euclidean);

/// Default trailing window of the finite-sample Cauchy surrogate.
std::size_t default_cauchy_window(std::size_t length) noexcept;

/// True iff every pair in the trailing window is closer than `tol` in the
/// max-over-labels norm.
bool norm_cauchy_check(std::span<const SoftVector> seq, double tol,
                       InnerNorm nrm = InnerNorm::Euclidean,
                       std::optional<std::size_t> window = std::nullopt);

}  // namespace softcone
