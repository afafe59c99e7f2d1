#include "softcone/soft_cone.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "softcone/sampling.hpp"

namespace softcone {

Cone::Cone(std::string name, Kind kind, ParameterSet params, std::size_t dim, Predicate member,
           Predicate interior_member, std::optional<SoftReal> normal_constant)
    : name_(std::move(name)),
      kind_(kind),
      params_(std::move(params)),
      dim_(dim),
      member_(std::move(member)),
      interior_(std::move(interior_member)),
      normal_constant_(std::move(normal_constant)) {
  if (dim_ == 0) fail(ErrorCode::InvalidArgument, "cone dimension must be positive");
  if (!member_ || !interior_) fail(ErrorCode::InvalidArgument, "cone predicates must be callable");
  if (normal_constant_) {
    require_same_params(params_, normal_constant_->params());
    if (!soft_lt(SoftReal::constant(params_, 0.0), *normal_constant_))
      fail(ErrorCode::InvalidArgument, "normal constant must be positive");
  }
  if (!member_(SoftVector::zero(params_, dim_))) fail(ErrorCode::InvalidArgument, "cone must contain Theta");
}

void Cone::check(const SoftVector& x) const {
  require_same_params(params_, x.params());
  if (x.dim() != dim_) fail(ErrorCode::MismatchedDimension, "vector dimension differs from cone dimension");
}

bool Cone::contains(const SoftVector& x) const {
  check(x);
  return member_(x);
}

bool Cone::interior_contains(const SoftVector& x) const {
  check(x);
  return interior_(x) && member_(x);
}

Cone orthant_cone(ParameterSet params, std::size_t dim, double interior_margin) {
  if (dim == 0) fail(ErrorCode::InvalidArgument, "orthant dimension must be positive");
  if (!(interior_margin >= 0.0)) fail(ErrorCode::InvalidArgument, "interior margin must be non-negative");
  auto member = [](const SoftVector& x) {
    const auto v = x.flat();
    return std::all_of(v.begin(), v.end(), [](double c) { return c >= 0.0; });
  };
  auto interior = [interior_margin](const SoftVector& x) {
    const auto v = x.flat();
    return std::all_of(v.begin(), v.end(), [interior_margin](double c) { return c > interior_margin; });
  };
  auto one = SoftReal::constant(params, 1.0);
  return Cone("orthant", Cone::Kind::Orthant, std::move(params), dim, member, interior, std::move(one));
}

namespace {

Cone make_ray(ParameterSet params, std::size_t dim) {
  auto member = [](const SoftVector& x) {
    for (std::size_t l = 0; l < x.labels(); ++l) {
      const auto t = x.at(l);
      if (!(t[0] >= 0.0)) return false;
      for (std::size_t k = 1; k < t.size(); ++k)
        if (t[k] != 0.0) return false;
    }
    return true;
  };
  // For dim >= 2 the ray has no interior. In R^1 it is the whole orthant.
  auto interior = [dim](const SoftVector& x) {
    if (dim > 1) return false;
    const auto v = x.flat();
    return std::all_of(v.begin(), v.end(), [](double c) { return c > 0.0; });
  };
  auto one = SoftReal::constant(params, 1.0);
  return Cone("ray", Cone::Kind::Custom, std::move(params), dim, member, interior, std::move(one));
}

struct ConeRegistry {
  std::mutex mutex;
  std::map<std::string, ConeFactory> factories{{"ray", make_ray}};
};

ConeRegistry& cone_registry() {
  static ConeRegistry registry;
  return registry;
}

}  // namespace

void register_cone(const std::string& id, ConeFactory factory) {
  auto& reg = cone_registry();
  std::lock_guard lock(reg.mutex);
  reg.factories[id] = std::move(factory);
}

bool has_registered_cone(const std::string& id) {
  auto& reg = cone_registry();
  std::lock_guard lock(reg.mutex);
  return reg.factories.count(id) != 0;
}

Cone make_registered_cone(const std::string& id, ParameterSet params, std::size_t dim) {
  ConeFactory factory;
  {
    auto& reg = cone_registry();
    std::lock_guard lock(reg.mutex);
    auto it = reg.factories.find(id);
    if (it == reg.factories.end()) fail(ErrorCode::Schema, "unknown cone id '" + id + "'");
    factory = it->second;
  }
  return factory(std::move(params), dim);
}

std::string_view to_string(ConeOrder o) noexcept {
  switch (o) {
    case ConeOrder::WayBelow: return "way_below";
    case ConeOrder::Prec: return "prec";
    case ConeOrder::Preceq: return "preceq";
    case ConeOrder::None: return "none";
  }
  return "none";
}

ConeOrder compare(const Cone& cone, const SoftVector& x, const SoftVector& y) {
  require_compatible(x, y);
  const SoftVector diff = y - x;
  if (!cone.contains(diff)) return ConeOrder::None;
  if (cone.interior_contains(diff)) return ConeOrder::WayBelow;
  if (!(x == y)) return ConeOrder::Prec;
  return ConeOrder::Preceq;
}

SoftVector sup_pair(const Cone& cone, const SoftVector& x, const SoftVector& y) {
  if (cone.kind() != Cone::Kind::Orthant) fail(ErrorCode::UnsupportedCone, "sup_pair is defined for orthant cones only");
  require_compatible(x, y);
  require_same_params(cone.params(), x.params());
  if (x.dim() != cone.dim()) fail(ErrorCode::MismatchedDimension, "vector dimension differs from cone dimension");
  std::vector<double> out(x.flat().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(x.flat()[i], y.flat()[i]);
  return SoftVector(x.params(), x.dim(), std::move(out));
}

SoftVector sup_all(const Cone& cone, std::span<const SoftVector> xs) {
  if (xs.empty()) fail(ErrorCode::EmptyCollection, "supremum of an empty collection");
  SoftVector acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = sup_pair(cone, acc, xs[i]);
  return acc;
}

std::string_view to_string(ConeProperty p) noexcept {
  switch (p) {
    case ConeProperty::Normal: return "normal";
    case ConeProperty::Minihedral: return "minihedral";
    case ConeProperty::StronglyMinihedral: return "strongly_minihedral";
    case ConeProperty::Solid: return "solid";
    case ConeProperty::Pointed: return "pointed";
    case ConeProperty::ClosedUnderCombination: return "closed_under_combination";
    case ConeProperty::Regular: return "regular";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kRejectionAttempts = 256;

// Mix of signed values, exact zeros and absolute values so that boundary
// points and lower-dimensional cones get hit with positive probability.
SoftVector candidate(Rng& rng, const Cone& cone, bool fold_abs) {
  std::vector<double> values(cone.params().size() * cone.dim());
  for (double& v : values) {
    if (uniform(rng, 0.0, 1.0) < 0.25) {
      v = 0.0;
    } else {
      v = uniform(rng, -1.0, 1.0);
      if (fold_abs) v = std::fabs(v);
    }
  }
  return SoftVector(cone.params(), cone.dim(), std::move(values));
}

std::optional<SoftVector> sample_member(Rng& rng, const Cone& cone) {
  for (std::size_t k = 0; k < kRejectionAttempts; ++k) {
    SoftVector x = candidate(rng, cone, k % 2 == 0);
    if (cone.contains(x)) return x;
  }
  return std::nullopt;
}

SoftVector sample_any(Rng& rng, const Cone& cone) { return candidate(rng, cone, false); }

void record_failure(ConePropertyReport& r, std::vector<SoftVector> cx) {
  if (r.passed) {
    r.passed = false;
    r.counterexample = std::move(cx);
  }
}

void check_normal(const Cone& cone, std::size_t trials, std::uint64_t seed, InnerNorm nrm, ConePropertyReport& r) {
  std::vector<double> alpha(cone.params().size(), 0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    auto x = sample_member(rng, cone);
    auto p = sample_member(rng, cone);
    if (!x || !p) continue;
    // Scale the increment so both short and long gaps between x and y occur.
    const SoftVector y = *x + uniform(rng, 0.0, 4.0) * *p;
    if (!cone.contains(y)) {
      record_failure(r, {*x, y});
      continue;
    }
    ++r.effective_trials;
    const SoftReal nx = norm(*x, nrm), ny = norm(y, nrm);
    for (std::size_t l = 0; l < alpha.size(); ++l) {
      if (ny[l] == 0.0) {
        if (nx[l] != 0.0) record_failure(r, {*x, y});
        continue;
      }
      alpha[l] = std::max(alpha[l], nx[l] / ny[l]);
    }
  }
  // largest observed ||x|| / ||y|| per label; 0 where every sampled y was Theta
  r.empirical_alpha = SoftReal(cone.params(), alpha);
  if (const auto& declared = cone.normal_constant()) {
    for (std::size_t l = 0; l < alpha.size(); ++l)
      if (alpha[l] > (*declared)[l] * (1.0 + 1e-12)) r.passed = false;
  }
}

void check_sup(const Cone& cone, std::size_t trials, std::uint64_t seed, bool many, ConePropertyReport& r) {
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const std::size_t count = many ? 2 + static_cast<std::size_t>(uniform(rng, 0.0, 5.0)) : 2;
    std::vector<SoftVector> xs;
    for (std::size_t i = 0; i < count; ++i) xs.push_back(sample_any(rng, cone));
    const SoftVector s = sup_all(cone, xs);
    ++r.effective_trials;
    for (const auto& x : xs)
      if (!preceq(cone, x, s)) record_failure(r, {x, s});
    // Upper bounds built above one member must dominate s whenever they bound
    // every member.
    for (std::size_t k = 0; k < 4; ++k) {
      auto p = sample_member(rng, cone);
      if (!p) continue;
      const SoftVector z = xs[k % xs.size()] + *p;
      const bool bounds_all =
          std::all_of(xs.begin(), xs.end(), [&](const SoftVector& x) { return preceq(cone, x, z); });
      if (bounds_all && !preceq(cone, s, z)) record_failure(r, {s, z});
    }
  }
}

void check_solid(const Cone& cone, std::size_t trials, std::uint64_t seed, ConePropertyReport& r) {
  std::vector<SoftVector> candidates;
  candidates.push_back(SoftVector::constant(cone.params(), std::vector<double>(cone.dim(), 1.0)));
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    candidates.push_back(candidate(rng, cone, true));
  }
  for (const auto& c : candidates) {
    ++r.effective_trials;
    if (cone.interior_contains(c)) {
      r.witness = c;
      return;
    }
  }
  r.passed = false;
}

void check_pointed(const Cone& cone, std::size_t trials, std::uint64_t seed, ConePropertyReport& r) {
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    auto x = sample_member(rng, cone);
    if (!x) continue;
    ++r.effective_trials;
    if (!x->is_zero() && cone.contains(-*x)) record_failure(r, {*x});
  }
}

void check_combination(const Cone& cone, std::size_t trials, std::uint64_t seed, ConePropertyReport& r) {
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    auto x = sample_member(rng, cone);
    auto y = sample_member(rng, cone);
    if (!x || !y) continue;
    ++r.effective_trials;
    const SoftReal a = random_soft_real(rng, cone.params(), 0.0, 5.0);
    const SoftReal b = random_soft_real(rng, cone.params(), 0.0, 5.0);
    const SoftVector z = a * *x + b * *y;
    if (!cone.contains(z)) record_failure(r, {*x, *y, z});
  }
}

void check_regular(const Cone& cone, std::size_t trials, std::uint64_t seed, InnerNorm nrm, ConePropertyReport& r) {
  constexpr std::size_t kLength = 60;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    std::vector<SoftVector> seq{sample_any(rng, cone)};
    double scale = 1.0;
    for (std::size_t k = 1; k < kLength; ++k) {
      auto p = sample_member(rng, cone);
      if (!p) break;
      scale *= 0.5;
      seq.push_back(seq.back() + scale * *p);
    }
    if (seq.size() < kLength) continue;
    ++r.effective_trials;
    if (!monotone_sequence_converges(cone, seq, 1e-9, nrm)) record_failure(r, {seq.front(), seq.back()});
  }
}

}  // namespace

ConePropertyReport cone_property_check(const Cone& cone, ConeProperty property, std::size_t trials,
                                       std::uint64_t seed, InnerNorm nrm) {
  if (trials == 0) fail(ErrorCode::InvalidArgument, "trials must be positive");
  const bool orthant_only = property == ConeProperty::Minihedral || property == ConeProperty::StronglyMinihedral ||
                            property == ConeProperty::Regular;
  if (orthant_only && cone.kind() != Cone::Kind::Orthant)
    fail(ErrorCode::UnsupportedProperty,
         std::string(to_string(property)) + " cannot be checked on custom cones");

  ConePropertyReport r{property};
  r.trials = trials;
  switch (property) {
    case ConeProperty::Normal: check_normal(cone, trials, seed, nrm, r); break;
    case ConeProperty::Minihedral: check_sup(cone, trials, seed, false, r); break;
    case ConeProperty::StronglyMinihedral: check_sup(cone, trials, seed, true, r); break;
    case ConeProperty::Solid: check_solid(cone, trials, seed, r); break;
    case ConeProperty::Pointed: check_pointed(cone, trials, seed, r); break;
    case ConeProperty::ClosedUnderCombination: check_combination(cone, trials, seed, r); break;
    case ConeProperty::Regular: check_regular(cone, trials, seed, nrm, r); break;
  }
  return r;
}

bool monotone_sequence_converges(const Cone& cone, std::span<const SoftVector> seq, double tol, InnerNorm nrm) {
  if (seq.size() < 2) fail(ErrorCode::EmptySequence, "regularity check needs at least two terms");
  bool increasing = true, decreasing = true;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    increasing = increasing && preceq(cone, seq[i], seq[i + 1]);
    decreasing = decreasing && preceq(cone, seq[i + 1], seq[i]);
  }
  if (!increasing && !decreasing) return true;
  return norm_cauchy_check(seq, tol, nrm);
}

}  // namespace softcone
