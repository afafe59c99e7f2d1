#include "softcone/soft_core.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <unordered_set>

namespace softcone {

ParameterSet::ParameterSet(std::vector<std::string> labels) {
  if (labels.empty()) fail(ErrorCode::InvalidArgument, "parameter set must be non-empty");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) fail(ErrorCode::InvalidArgument, "parameter labels must be non-empty");
    if (!seen.insert(l).second) fail(ErrorCode::InvalidArgument, "duplicate parameter label '" + l + "'");
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

std::optional<std::size_t> ParameterSet::find(std::string_view label) const noexcept {
  const auto& ls = *labels_;
  for (std::size_t i = 0; i < ls.size(); ++i)
    if (ls[i] == label) return i;
  return std::nullopt;
}

std::size_t ParameterSet::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  fail(ErrorCode::MissingLabel, "unknown parameter label '" + std::string(label) + "'");
}

void require_same_params(const ParameterSet& a, const ParameterSet& b) {
  if (!(a == b)) fail(ErrorCode::MismatchedParameters, "operands are defined over different parameter sets");
}

// ---------------------------------------------------------------------------
// Soft sets

SoftSet::SoftSet(ParameterSet params, ElementSet universe, std::vector<ElementSet> slices)
    : params_(std::move(params)), universe_(std::move(universe)), slices_(std::move(slices)) {
  if (slices_.size() != params_.size())
    fail(ErrorCode::MissingLabel, "soft set needs exactly one slice per parameter");
  for (const auto& s : slices_)
    if (!std::includes(universe_.begin(), universe_.end(), s.begin(), s.end()))
      fail(ErrorCode::InvalidArgument, "slice is not a subset of the universe");
}

bool SoftSet::all_slices_nonempty() const noexcept {
  return std::none_of(slices_.begin(), slices_.end(), [](const ElementSet& s) { return s.empty(); });
}

namespace {

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

ElementSet set_product(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  for (const auto& u : a)
    for (const auto& v : b) out.insert("(" + u + "," + v + ")");
  return out;
}

}  // namespace

SoftSet soft_set_op(SetOp kind, const SoftSet& f, const SoftSet* g) {
  if (kind == SetOp::Complement) {
    std::vector<ElementSet> slices;
    slices.reserve(f.params().size());
    for (const auto& s : f.slices()) slices.push_back(set_difference(f.universe(), s));
    return SoftSet(f.params(), f.universe(), std::move(slices));
  }

  if (g == nullptr) fail(ErrorCode::MissingOperand, "binary soft set operation needs a second operand");
  require_same_params(f.params(), g->params());

  if (kind == SetOp::Product) {
    std::vector<ElementSet> slices;
    for (std::size_t i = 0; i < f.params().size(); ++i) slices.push_back(set_product(f.slice(i), g->slice(i)));
    return SoftSet(f.params(), set_product(f.universe(), g->universe()), std::move(slices));
  }

  if (f.universe() != g->universe())
    fail(ErrorCode::InvalidArgument, "soft set operands must share a universe");

  std::vector<ElementSet> slices;
  slices.reserve(f.params().size());
  for (std::size_t i = 0; i < f.params().size(); ++i) {
    switch (kind) {
      case SetOp::Union: slices.push_back(set_union(f.slice(i), g->slice(i))); break;
      case SetOp::Intersection: slices.push_back(set_intersection(f.slice(i), g->slice(i))); break;
      case SetOp::Difference: slices.push_back(set_difference(f.slice(i), g->slice(i))); break;
      default: break;
    }
  }
  return SoftSet(f.params(), f.universe(), std::move(slices));
}

std::vector<SoftSetElement> soft_elements_of(const SoftSet& f, std::size_t cap) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < f.params().size(); ++i) {
    const auto n = f.slice(i).size();
    if (n == 0) fail(ErrorCode::EmptySlice, "slice at '" + f.params().label(i) + "' is empty");
    if (count > cap / n) fail(ErrorCode::EnumerationTooLarge, "soft element enumeration exceeds cap");
    count *= n;
  }
  if (count > cap) fail(ErrorCode::EnumerationTooLarge, "soft element enumeration exceeds cap");

  std::vector<std::vector<Element>> choices;
  for (const auto& s : f.slices()) choices.emplace_back(s.begin(), s.end());

  std::vector<SoftSetElement> out;
  out.reserve(count);
  std::vector<std::size_t> idx(choices.size(), 0);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Element> values;
    values.reserve(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) values.push_back(choices[i][idx[i]]);
    out.emplace_back(f.params(), std::move(values));
    // odometer, last label fastest
    for (std::size_t i = idx.size(); i-- > 0;) {
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

SoftSet soft_set_from_elements(std::span<const SoftSetElement> elems, std::optional<ElementSet> universe) {
  if (elems.empty()) fail(ErrorCode::EmptyCollection, "cannot build a soft set from an empty collection");
  const ParameterSet& params = elems.front().params();
  std::vector<ElementSet> slices(params.size());
  for (const auto& e : elems) {
    require_same_params(params, e.params());
    for (std::size_t i = 0; i < params.size(); ++i) slices[i].insert(e.at(i));
  }
  if (!universe) {
    universe.emplace();
    for (const auto& s : slices) universe->insert(s.begin(), s.end());
  }
  return SoftSet(params, std::move(*universe), std::move(slices));
}

// ---------------------------------------------------------------------------
// Soft reals

namespace {

void require_finite(std::span<const double> values, ErrorCode code, const char* what) {
  for (double v : values)
    if (!std::isfinite(v)) fail(code, what);
}

}  // namespace

SoftReal::SoftReal(ParameterSet params, std::vector<double> values)
    : params_(std::move(params)), values_(std::move(values)) {
  if (values_.size() != params_.size())
    fail(ErrorCode::MissingLabel, "soft real must carry one value per parameter");
  require_finite(values_, ErrorCode::InvalidArgument, "soft real values must be finite");
}

SoftReal SoftReal::constant(ParameterSet params, double r) {
  const auto n = params.size();
  return SoftReal(std::move(params), std::vector<double>(n, r));
}

bool SoftReal::is_constant() const noexcept {
  return std::adjacent_find(values_.begin(), values_.end(), std::not_equal_to<>()) == values_.end();
}

double SoftReal::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }
double SoftReal::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }

SoftReal soft_real_arith(RealOp kind, const SoftReal& r, const SoftReal* s, double scalar) {
  const bool binary = kind == RealOp::Add || kind == RealOp::Sub || kind == RealOp::Mul;
  if (binary) {
    if (s == nullptr) fail(ErrorCode::MissingOperand, "binary soft real operation needs a second operand");
    require_same_params(r.params(), s->params());
  }
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    switch (kind) {
      case RealOp::Add: out[i] = r[i] + (*s)[i]; break;
      case RealOp::Sub: out[i] = r[i] - (*s)[i]; break;
      case RealOp::Mul: out[i] = r[i] * (*s)[i]; break;
      case RealOp::Neg: out[i] = -r[i]; break;
      case RealOp::Abs: out[i] = std::fabs(r[i]); break;
      case RealOp::ScalarMul: out[i] = scalar * r[i]; break;
    }
  }
  require_finite(out, ErrorCode::NonFiniteResult, "soft real arithmetic overflowed");
  return SoftReal(r.params(), std::move(out));
}

SoftReal operator+(const SoftReal& r, const SoftReal& s) { return soft_real_arith(RealOp::Add, r, &s); }
SoftReal operator-(const SoftReal& r, const SoftReal& s) { return soft_real_arith(RealOp::Sub, r, &s); }
SoftReal operator*(const SoftReal& r, const SoftReal& s) { return soft_real_arith(RealOp::Mul, r, &s); }
SoftReal operator*(double a, const SoftReal& r) { return soft_real_arith(RealOp::ScalarMul, r, nullptr, a); }
SoftReal operator-(const SoftReal& r) { return soft_real_arith(RealOp::Neg, r); }
SoftReal abs(const SoftReal& r) { return soft_real_arith(RealOp::Abs, r); }

SoftReal operator/(const SoftReal& r, const SoftReal& s) {
  require_same_params(r.params(), s.params());
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = r[i] / s[i];
  require_finite(out, ErrorCode::NonFiniteResult, "soft real division by zero");
  return SoftReal(r.params(), std::move(out));
}

std::string_view to_string(SoftOrder o) noexcept {
  switch (o) {
    case SoftOrder::Eq: return "eq";
    case SoftOrder::Lt: return "lt";
    case SoftOrder::Gt: return "gt";
    case SoftOrder::Leq: return "leq";
    case SoftOrder::Geq: return "geq";
    case SoftOrder::Incomparable: return "incomparable";
  }
  return "incomparable";
}

SoftOrder soft_real_compare(const SoftReal& r, const SoftReal& s) {
  require_same_params(r.params(), s.params());
  bool all_le = true, all_ge = true, all_lt = true, all_gt = true;
  for (std::size_t i = 0; i < r.size(); ++i) {
    all_le = all_le && r[i] <= s[i];
    all_ge = all_ge && r[i] >= s[i];
    all_lt = all_lt && r[i] < s[i];
    all_gt = all_gt && r[i] > s[i];
  }
  if (all_le && all_ge) return SoftOrder::Eq;
  if (all_lt) return SoftOrder::Lt;
  if (all_gt) return SoftOrder::Gt;
  if (all_le) return SoftOrder::Leq;
  if (all_ge) return SoftOrder::Geq;
  return SoftOrder::Incomparable;
}

bool soft_leq(const SoftReal& r, const SoftReal& s) {
  const auto o = soft_real_compare(r, s);
  return o == SoftOrder::Eq || o == SoftOrder::Lt || o == SoftOrder::Leq;
}

bool soft_lt(const SoftReal& r, const SoftReal& s) { return soft_real_compare(r, s) == SoftOrder::Lt; }

bool approx_equal(const SoftReal& r, const SoftReal& s, double eps) {
  require_same_params(r.params(), s.params());
  for (std::size_t i = 0; i < r.size(); ++i)
    if (std::fabs(r[i] - s[i]) > eps) return false;
  return true;
}

}  // namespace softcone
