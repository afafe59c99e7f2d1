#pragma once

// Finite parameter sets, soft sets over finite universes, soft elements and
// soft real numbers.
//
// Every soft object is dense over its ParameterSet: one value per label, in
// the canonical label order of the set.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "softcone/error.hpp"

namespace softcone {

/// Ordered, non-empty set of distinct parameter labels.
///
/// Copies share the label storage, so passing a ParameterSet by value is cheap
/// and equality between copies of the same set is a pointer comparison.
class ParameterSet {
 public:
  explicit ParameterSet(std::vector<std::string> labels);
  ParameterSet(std::initializer_list<std::string> labels)
      : ParameterSet(std::vector<std::string>(labels)) {}

  std::size_t size() const noexcept { return labels_->size(); }
  const std::vector<std::string>& labels() const noexcept { return *labels_; }
  const std::string& label(std::size_t i) const { return labels_->at(i); }

  /// Index of `label`, or nullopt when absent.
  std::optional<std::size_t> find(std::string_view label) const noexcept;
  /// Index of `label`; throws MissingLabel when absent.
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const ParameterSet& a, const ParameterSet& b) noexcept {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

void require_same_params(const ParameterSet& a, const ParameterSet& b);

/// Opaque identifier of a universe element.
using Element = std::string;
using ElementSet = std::set<Element>;

/// A soft set (F,A): one subset of a finite universe per parameter.
class SoftSet {
 public:
  SoftSet(ParameterSet params, ElementSet universe, std::vector<ElementSet> slices);

  const ParameterSet& params() const noexcept { return params_; }
  const ElementSet& universe() const noexcept { return universe_; }
  const ElementSet& slice(std::size_t i) const { return slices_.at(i); }
  const ElementSet& slice(std::string_view label) const { return slices_[params_.index_of(label)]; }
  const std::vector<ElementSet>& slices() const noexcept { return slices_; }

  /// Membership in the collection S(E): every slice non-empty.
  bool all_slices_nonempty() const noexcept;

  friend bool operator==(const SoftSet& a, const SoftSet& b) {
    return a.params_ == b.params_ && a.universe_ == b.universe_ && a.slices_ == b.slices_;
  }

 private:
  ParameterSet params_;
  ElementSet universe_;
  std::vector<ElementSet> slices_;
};

enum class SetOp { Union, Intersection, Difference, Complement, Product };

/// Slice-wise set algebra. Product elements are encoded as "(u,v)" over the
/// pair universe.
SoftSet soft_set_op(SetOp kind, const SoftSet& f, const SoftSet* g = nullptr);

/// A choice function A -> X.
template <class Point>
class SoftElement {
 public:
  SoftElement(ParameterSet params, std::vector<Point> values)
      : params_(std::move(params)), values_(std::move(values)) {
    if (values_.size() != params_.size())
      fail(ErrorCode::MissingLabel, "soft element must carry one value per parameter");
  }

  const ParameterSet& params() const noexcept { return params_; }
  const Point& at(std::size_t i) const { return values_.at(i); }
  const Point& at(std::string_view label) const { return values_[params_.index_of(label)]; }
  const std::vector<Point>& values() const noexcept { return values_; }

  friend bool operator==(const SoftElement& a, const SoftElement& b) {
    return a.params_ == b.params_ && a.values_ == b.values_;
  }
  friend bool operator<(const SoftElement& a, const SoftElement& b) { return a.values_ < b.values_; }

 private:
  ParameterSet params_;
  std::vector<Point> values_;
};

using SoftSetElement = SoftElement<Element>;

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// SE(F,A): every soft element of `f`, enumerated with the first label varying
/// slowest. Count equals the product of slice sizes.
std::vector<SoftSetElement> soft_elements_of(const SoftSet& f,
                                             std::size_t cap = kDefaultEnumerationCap);

/// SS(B): slice at each label is the image of the collection. The universe
/// defaults to the union of all images.
SoftSet soft_set_from_elements(std::span<const SoftSetElement> elems,
                               std::optional<ElementSet> universe = std::nullopt);

/// A soft real number: one finite real per parameter.
class SoftReal {
 public:
  SoftReal(ParameterSet params, std::vector<double> values);
  /// The constant soft real r-bar.
  static SoftReal constant(ParameterSet params, double r);

  const ParameterSet& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(std::string_view label) const { return values_[params_.index_of(label)]; }
  std::span<const double> values() const noexcept { return values_; }

  bool is_constant() const noexcept;
  double max() const noexcept;
  double min() const noexcept;

  /// Exact equality of stored values.
  friend bool operator==(const SoftReal& a, const SoftReal& b) {
    return a.params_ == b.params_ && a.values_ == b.values_;
  }

 private:
  ParameterSet params_;
  std::vector<double> values_;
};

enum class RealOp { Add, Sub, Mul, Neg, Abs, ScalarMul };

/// Label-wise arithmetic. ScalarMul takes the crisp factor from `scalar`;
/// Neg and Abs ignore `s`.
SoftReal soft_real_arith(RealOp kind, const SoftReal& r, const SoftReal* s = nullptr,
                         double scalar = 1.0);

SoftReal operator+(const SoftReal& r, const SoftReal& s);
SoftReal operator-(const SoftReal& r, const SoftReal& s);
SoftReal operator*(const SoftReal& r, const SoftReal& s);
SoftReal operator*(double a, const SoftReal& r);
SoftReal operator-(const SoftReal& r);
SoftReal abs(const SoftReal& r);
/// Label-wise division; throws NonFiniteResult on a zero divisor.
SoftReal operator/(const SoftReal& r, const SoftReal& s);

enum class SoftOrder { Eq, Lt, Gt, Leq, Geq, Incomparable };

std::string_view to_string(SoftOrder o) noexcept;

/// Strongest relation holding at every label.
SoftOrder soft_real_compare(const SoftReal& r, const SoftReal& s);

bool soft_leq(const SoftReal& r, const SoftReal& s);
bool soft_lt(const SoftReal& r, const SoftReal& s);

/// |r(l) - s(l)| <= eps at every label.
bool approx_equal(const SoftReal& r, const SoftReal& s, double eps);

}  // namespace softcone
