#include "softcone/soft_space.hpp"

#include <algorithm>
#include <cmath>

namespace softcone {

namespace {

void require_finite_result(std::span<const double> values) {
  for (double v : values)
    if (!std::isfinite(v)) fail(ErrorCode::NonFiniteResult, "soft vector arithmetic overflowed");
}

}  // namespace

SoftVector::SoftVector(ParameterSet params, std::size_t dim, std::vector<double> values)
    : params_(std::move(params)), dim_(dim), values_(std::move(values)) {
  if (dim_ == 0) fail(ErrorCode::InvalidArgument, "soft vector dimension must be positive");
  if (values_.size() != params_.size() * dim_)
    fail(ErrorCode::MismatchedDimension, "soft vector needs a tuple of exactly dim values at every label");
  for (double v : values_)
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "soft vector values must be finite");
}

SoftVector SoftVector::zero(ParameterSet params, std::size_t dim) {
  const auto n = params.size() * dim;
  return SoftVector(std::move(params), dim, std::vector<double>(n, 0.0));
}

SoftVector SoftVector::constant(ParameterSet params, std::span<const double> tuple) {
  std::vector<double> values;
  values.reserve(params.size() * tuple.size());
  for (std::size_t i = 0; i < params.size(); ++i) values.insert(values.end(), tuple.begin(), tuple.end());
  return SoftVector(std::move(params), tuple.size(), std::move(values));
}

SoftVector SoftVector::from_real(const SoftReal& r) {
  return SoftVector(r.params(), 1, std::vector<double>(r.values().begin(), r.values().end()));
}

SoftVector SoftVector::with(std::size_t label, std::span<const double> tuple) const {
  if (tuple.size() != dim_) fail(ErrorCode::MismatchedDimension, "tuple has the wrong dimension");
  if (label >= labels()) fail(ErrorCode::MissingLabel, "label index out of range");
  auto values = values_;
  std::copy(tuple.begin(), tuple.end(), values.begin() + static_cast<std::ptrdiff_t>(label * dim_));
  return SoftVector(params_, dim_, std::move(values));
}

SoftReal SoftVector::component(std::size_t coord) const {
  if (coord >= dim_) fail(ErrorCode::MismatchedDimension, "coordinate out of range");
  std::vector<double> out(labels());
  for (std::size_t l = 0; l < out.size(); ++l) out[l] = (*this)(l, coord);
  return SoftReal(params_, std::move(out));
}

bool SoftVector::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

void require_compatible(const SoftVector& x, const SoftVector& y) {
  require_same_params(x.params(), y.params());
  if (x.dim() != y.dim()) fail(ErrorCode::MismatchedDimension, "soft vectors have different dimensions");
}

SoftVector vec_arith(VecOp kind, const SoftVector& x, const SoftVector* y, const SoftReal* scalar) {
  const auto in = x.flat();
  std::vector<double> out(in.size());
  switch (kind) {
    case VecOp::Add:
    case VecOp::Sub: {
      if (y == nullptr) fail(ErrorCode::MissingOperand, "binary vector operation needs a second operand");
      require_compatible(x, *y);
      const auto other = y->flat();
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = kind == VecOp::Add ? in[i] + other[i] : in[i] - other[i];
      break;
    }
    case VecOp::ScalarMulSoft: {
      if (scalar == nullptr) fail(ErrorCode::MissingOperand, "scalar multiplication needs a soft scalar");
      require_same_params(x.params(), scalar->params());
      for (std::size_t l = 0; l < x.labels(); ++l)
        for (std::size_t k = 0; k < x.dim(); ++k) out[l * x.dim() + k] = (*scalar)[l] * x(l, k);
      break;
    }
    case VecOp::Neg:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = -in[i];
      break;
  }
  require_finite_result(out);
  return SoftVector(x.params(), x.dim(), std::move(out));
}

SoftVector operator+(const SoftVector& x, const SoftVector& y) { return vec_arith(VecOp::Add, x, &y); }
SoftVector operator-(const SoftVector& x, const SoftVector& y) { return vec_arith(VecOp::Sub, x, &y); }
SoftVector operator-(const SoftVector& x) { return vec_arith(VecOp::Neg, x); }
SoftVector operator*(const SoftReal& a, const SoftVector& x) {
  return vec_arith(VecOp::ScalarMulSoft, x, nullptr, &a);
}
SoftVector operator*(double a, const SoftVector& x) { return SoftReal::constant(x.params(), a) * x; }

std::string_view to_string(InnerNorm n) noexcept {
  switch (n) {
    case InnerNorm::Euclidean: return "euclidean";
    case InnerNorm::Max: return "max";
    case InnerNorm::One: return "one";
  }
  return "euclidean";
}

std::optional<InnerNorm> parse_inner_norm(std::string_view s) noexcept {
  if (s == "euclidean") return InnerNorm::Euclidean;
  if (s == "max") return InnerNorm::Max;
  if (s == "one") return InnerNorm::One;
  return std::nullopt;
}

double inner_norm(std::span<const double> tuple, InnerNorm nrm) noexcept {
  switch (nrm) {
    case InnerNorm::Euclidean: {
      if (tuple.size() == 1) return std::fabs(tuple[0]);
      double acc = 0.0;
      for (double v : tuple) acc = std::hypot(acc, v);
      return acc;
    }
    case InnerNorm::Max: {
      double m = 0.0;
      for (double v : tuple) m = std::max(m, std::fabs(v));
      return m;
    }
    case InnerNorm::One: {
      double s = 0.0;
      for (double v : tuple) s += std::fabs(v);
      return s;
    }
  }
  return 0.0;
}

SoftReal norm(const SoftVector& x, InnerNorm nrm) {
  std::vector<double> out(x.labels());
  for (std::size_t l = 0; l < out.size(); ++l) out[l] = inner_norm(x.at(l), nrm);
  return SoftReal(x.params(), std::move(out));
}

double max_label_norm(const SoftVector& x, InnerNorm nrm) {
  double m = 0.0;
  for (std::size_t l = 0; l < x.labels(); ++l) m = std::max(m, inner_norm(x.at(l), nrm));
  return m;
}

SoftReal norm_metric(const SoftVector& x, const SoftVector& y, InnerNorm nrm) { return norm(x - y, nrm); }

Ball::Ball(SoftVector c, SoftReal r, BallKind k) : center(std::move(c)), radius(std::move(r)), kind(k) {
  require_same_params(center.params(), radius.params());
  if (kind != BallKind::Sphere && !soft_lt(SoftReal::constant(radius.params(), 0.0), radius))
    fail(ErrorCode::InvalidArgument, "ball radius must be strictly positive at every label");
}

bool ball_contains(const Ball& b, const SoftVector& y, InnerNorm nrm) {
  require_compatible(b.center, y);
  const SoftReal d = norm_metric(b.center, y, nrm);
  for (std::size_t l = 0; l < d.size(); ++l) {
    const double dist = d[l], r = b.radius[l];
    switch (b.kind) {
      case BallKind::Open:
        if (!(dist < r)) return false;
        break;
      case BallKind::Closed:
        if (!(dist <= r)) return false;
        break;
      case BallKind::Sphere:
        if (dist != r) return false;
        break;
    }
  }
  return true;
}

std::size_t default_cauchy_window(std::size_t length) noexcept {
  return std::min(length, std::max<std::size_t>(2, (length + 3) / 4));
}

bool norm_cauchy_check(std::span<const SoftVector> seq, double tol, InnerNorm nrm,
                       std::optional<std::size_t> window) {
  if (seq.size() < 2) fail(ErrorCode::EmptySequence, "Cauchy check needs at least two terms");
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  const std::size_t w = std::min(seq.size(), window.value_or(default_cauchy_window(seq.size())));
  if (w < 2) fail(ErrorCode::InvalidArgument, "Cauchy window must hold at least two terms");
  const std::size_t start = seq.size() - w;
  for (std::size_t n = start; n < seq.size(); ++n)
    for (std::size_t m = n + 1; m < seq.size(); ++m)
      if (!(max_label_norm(seq[n] - seq[m], nrm) < tol)) return false;
  return true;
}

}  // namespace softcone
