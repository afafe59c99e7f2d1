#include "softcone/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace softcone {

SelfMap::SelfMap(std::string name, std::size_t point_dim, Apply apply, std::optional<std::vector<AffineLabel>> affine)
    : name_(std::move(name)), point_dim_(point_dim), apply_(std::move(apply)), affine_(std::move(affine)) {
  if (point_dim_ == 0) fail(ErrorCode::InvalidArgument, "map point dimension must be positive");
  if (!apply_) fail(ErrorCode::InvalidArgument, "map must be callable");
}

SoftVector SelfMap::operator()(const SoftVector& x) const {
  if (x.dim() != point_dim_) fail(ErrorCode::MapDomainError, "map '" + name_ + "' applied to a point of the wrong dimension");
  std::optional<SoftVector> y;
  try {
    y.emplace(apply_(x));
  } catch (const Error& e) {
    fail(ErrorCode::MapDomainError, "map '" + name_ + "' failed: " + e.what());
  }
  if (!(y->params() == x.params()) || y->dim() != x.dim())
    fail(ErrorCode::MapDomainError, "map '" + name_ + "' changed the parameter set or dimension");
  return *std::move(y);
}

SelfMap scalar_affine(const SoftReal& a, const SoftReal& b) {
  require_same_params(a.params(), b.params());
  std::vector<AffineLabel> data;
  for (std::size_t l = 0; l < a.size(); ++l) data.push_back({{a[l]}, {b[l]}});
  return matrix_affine(a.params(), 1, std::move(data));
}

SelfMap matrix_affine(const ParameterSet& params, std::size_t dim, std::vector<AffineLabel> per_label) {
  if (per_label.size() != params.size()) fail(ErrorCode::MissingLabel, "affine map needs data for every label");
  for (const auto& d : per_label) {
    if (d.matrix.size() != dim * dim || d.offset.size() != dim)
      fail(ErrorCode::MismatchedDimension, "affine map data has the wrong shape");
    for (double v : d.matrix)
      if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "affine map entries must be finite");
    for (double v : d.offset)
      if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "affine map entries must be finite");
  }
  auto apply = [params, dim, per_label](const SoftVector& x) {
    require_same_params(params, x.params());
    std::vector<double> out(x.flat().size());
    for (std::size_t l = 0; l < x.labels(); ++l) {
      const auto& d = per_label[l];
      const auto xl = x.at(l);
      for (std::size_t i = 0; i < dim; ++i) {
        double acc = d.offset[i];
        for (std::size_t j = 0; j < dim; ++j) acc += d.matrix[i * dim + j] * xl[j];
        out[l * dim + i] = acc;
      }
    }
    for (double v : out)
      if (!std::isfinite(v)) fail(ErrorCode::NonFiniteResult, "affine map overflowed");
    return SoftVector(x.params(), dim, std::move(out));
  };
  return SelfMap("affine", dim, apply, std::move(per_label));
}

SelfMap power(const SelfMap& map, std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "map power must be at least 1");
  if (n == 1) return map;
  return SelfMap(map.name() + "^" + std::to_string(n), map.point_dim(), [map, n](const SoftVector& x) {
    SoftVector y = map(x);
    for (std::size_t k = 1; k < n; ++k) y = map(y);
    return y;
  });
}

namespace {

SelfMap named(SelfMap m, std::string name) {
  return SelfMap(std::move(name), m.point_dim(), [m](const SoftVector& x) { return m(x); }, m.affine());
}

SelfMap uniform_scalar_affine(const ParameterSet& params, double a, double b, std::string name) {
  return named(scalar_affine(SoftReal::constant(params, a), SoftReal::constant(params, b)), std::move(name));
}

const std::map<std::string, SelfMap (*)(const ParameterSet&)>& map_registry() {
  static const std::map<std::string, SelfMap (*)(const ParameterSet&)> registry{
      {"halve_plus_one", [](const ParameterSet& p) { return uniform_scalar_affine(p, 0.5, 1.0, "halve_plus_one"); }},
      {"fifth", [](const ParameterSet& p) { return uniform_scalar_affine(p, 0.2, 0.0, "fifth"); }},
      {"double", [](const ParameterSet& p) { return uniform_scalar_affine(p, 2.0, 0.0, "double"); }},
      {"power_demo",
       [](const ParameterSet& p) {
         std::vector<AffineLabel> data(p.size(), AffineLabel{{0.0, 2.0, 0.1, 0.0}, {1.0, 1.0}});
         return named(matrix_affine(p, 2, std::move(data)), "power_demo");
       }},
  };
  return registry;
}

}  // namespace

SelfMap make_registered_map(const std::string& name, const ParameterSet& params) {
  const auto& reg = map_registry();
  auto it = reg.find(name);
  if (it == reg.end()) fail(ErrorCode::Schema, "unknown registered map '" + name + "'");
  return it->second(params);
}

bool has_registered_map(const std::string& name) { return map_registry().count(name) != 0; }

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Banach: return "banach";
    case Family::BanachBall: return "banach_ball";
    case Family::BanachPower: return "banach_power";
    case Family::Kannan: return "kannan";
    case Family::Chatterjea: return "chatterjea";
    case Family::Hybrid: return "hybrid";
  }
  return "banach";
}

std::optional<Family> parse_family(std::string_view s) noexcept {
  for (Family f : {Family::Banach, Family::BanachBall, Family::BanachPower, Family::Kannan, Family::Chatterjea,
                   Family::Hybrid})
    if (to_string(f) == s) return f;
  return std::nullopt;
}

namespace {

void require_range(const SoftReal& v, double upper, const char* what) {
  for (double x : v.values())
    if (!(x >= 0.0 && x < upper)) fail(ErrorCode::OutOfRange, std::string(what) + " out of range");
}

}  // namespace

void ContractionSpec::validate() const {
  switch (family) {
    case Family::Banach:
    case Family::BanachBall:
    case Family::BanachPower:
      require_range(t, 1.0 - kRatioGuard, "t");
      break;
    case Family::Kannan:
    case Family::Chatterjea:
      require_range(t, 0.5, "t");
      require_range(q(), 1.0 - kRatioGuard, "s = t/(1-t)");
      break;
    case Family::Hybrid:
      require_range(t, 1.0 - kRatioGuard, "t");
      if (!r) fail(ErrorCode::OutOfRange, "hybrid family needs r");
      require_same_params(t.params(), r->params());
      require_range(*r, 1.0, "r");
      break;
  }
  if (family == Family::BanachPower && power == 0) fail(ErrorCode::OutOfRange, "power n out of range");
  if (family == Family::BanachBall && !ball_radius) fail(ErrorCode::OutOfRange, "ball family needs a radius c");
}

SoftReal ContractionSpec::q() const {
  if (family == Family::Kannan || family == Family::Chatterjea) return t / (SoftReal::constant(t.params(), 1.0) - t);
  return t;
}

std::string_view to_string(ContractionStatus s) noexcept {
  switch (s) {
    case ContractionStatus::Witnessed: return "witnessed";
    case ContractionStatus::Refuted: return "refuted";
    case ContractionStatus::Assumed: return "assumed";
  }
  return "assumed";
}

PairSampler independent_pairs(PointSampler sampler) {
  return [sampler = std::move(sampler)](Rng& rng, std::size_t) {
    SoftVector x = sampler(rng);
    if (uniform(rng, 0.0, 1.0) < 0.1) return std::pair{x, x};
    SoftVector y = sampler(rng);
    return std::pair{std::move(x), std::move(y)};
  };
}

namespace {

double magnitude(std::initializer_list<const SoftVector*> xs) {
  double m = 0.0;
  for (const SoftVector* x : xs)
    for (double v : x->flat()) m = std::max(m, std::fabs(v));
  return m;
}

// lhs <= rhs in the cone order. On orthants each coordinate may miss by
// slack * max(|lhs|, |rhs|, scale), where scale is the size of the points the
// distances were computed from (cancellation error is relative to those).
bool dominated(const Cone& cone, const SoftVector& lhs, const SoftVector& rhs, double slack, double scale) {
  const SoftVector diff = rhs - lhs;
  if (cone.contains(diff)) return true;
  if (cone.kind() != Cone::Kind::Orthant) return false;
  const auto d = diff.flat(), a = lhs.flat(), b = rhs.flat();
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] < -slack * std::max({std::fabs(a[i]), std::fabs(b[i]), scale})) return false;
  return true;
}

}  // namespace

ContractionCheck verify_contraction(const SelfMap& map, const SoftConeMetric& metric, const ContractionSpec& spec,
                                    const PairSampler& sampler, std::size_t trials, std::uint64_t seed) {
  spec.validate();
  ContractionCheck out;
  out.trials = trials;
  if (trials == 0) return out;

  const SelfMap T = spec.family == Family::BanachPower ? power(map, spec.power) : map;
  out.status = ContractionStatus::Witnessed;
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng(derive_seed(seed, k));
    auto [x, y] = sampler(rng, k);
    const SoftVector Tx = T(x), Ty = T(y);
    const SoftVector lhs = metric(Tx, Ty);
    std::optional<SoftVector> rhs;
    switch (spec.family) {
      case Family::Banach:
      case Family::BanachBall:
      case Family::BanachPower:
        rhs = spec.t * metric(x, y);
        break;
      case Family::Kannan:
        rhs = spec.t * (metric(Tx, x) + metric(Ty, y));
        break;
      case Family::Chatterjea:
        rhs = spec.t * (metric(Tx, y) + metric(Ty, x));
        break;
      case Family::Hybrid:
        rhs = spec.t * metric(x, y) + *spec.r * metric(y, Tx);
        break;
    }
    if (!dominated(metric.cone(), lhs, *rhs, kContractionSlack, magnitude({&x, &y, &Tx, &Ty}))) {
      out.status = ContractionStatus::Refuted;
      out.counterexample.emplace(std::move(x), std::move(y));
      return out;
    }
  }
  return out;
}

SoftSequence iterate(const SelfMap& map, const SoftVector& x0, std::size_t k) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "iteration count must be at least 1");
  SoftSequence seq{x0};
  seq.reserve(k + 1);
  for (std::size_t i = 0; i < k; ++i) seq.push_back(map(seq.back()));
  return seq;
}

std::string_view to_string(Uniqueness u) noexcept {
  switch (u) {
    case Uniqueness::Unique: return "unique";
    case Uniqueness::UniqueIfTPlusRLt1: return "unique_if_t_plus_r_lt_1";
    case Uniqueness::Unknown: return "unknown";
  }
  return "unknown";
}

SoftVector FixedPointCertificate::apriori_bound_at(std::size_t m) const {
  if (residuals.empty()) fail(ErrorCode::PreconditionFailed, "certificate has no recorded steps");
  std::vector<double> factor(q.size());
  for (std::size_t l = 0; l < factor.size(); ++l) factor[l] = std::pow(q[l], static_cast<double>(m)) / (1.0 - q[l]);
  return SoftReal(q.params(), std::move(factor)) * residuals.front();
}

namespace {

void check_stop(const SoftConeMetric& metric, const StopCriterion& stop) {
  if (stop.c.has_value() == stop.norm_tol.has_value())
    fail(ErrorCode::InvalidArgument, "stop criterion needs exactly one of c or norm_tol");
  if (stop.c && !metric.cone().interior_contains(*stop.c))
    fail(ErrorCode::CNotInterior, "stop radius c must lie in the interior of the cone");
  if (stop.norm_tol && !(*stop.norm_tol > 0.0)) fail(ErrorCode::InvalidArgument, "norm_tol must be positive");
}

bool stop_reached(const SoftConeMetric& metric, const StopCriterion& stop, const SoftVector& bound, InnerNorm nrm) {
  if (stop.c) return way_below(metric.cone(), bound, *stop.c);
  return max_label_norm(bound, nrm) < *stop.norm_tol;
}

Uniqueness uniqueness_for(const ContractionSpec& spec) {
  if (spec.family != Family::Hybrid) return Uniqueness::Unique;
  const SoftReal sum = spec.t + *spec.r;
  return soft_lt(sum, SoftReal::constant(sum.params(), 1.0)) ? Uniqueness::UniqueIfTPlusRLt1 : Uniqueness::Unknown;
}

// Step ratio above q + slack, ignoring coordinates already at rounding level.
bool ratio_violated(const Cone& cone, const SoftReal& q, double slack, const SoftVector& prev, const SoftVector& cur,
                    const SoftVector& point) {
  const SoftVector allowed = (q + SoftReal::constant(q.params(), slack)) * prev;
  const SoftVector diff = allowed - cur;
  if (cone.contains(diff)) return false;
  if (cone.kind() != Cone::Kind::Orthant) return true;
  double scale = 1.0;
  for (double v : point.flat()) scale = std::max(scale, std::fabs(v));
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() * scale;
  const auto d = diff.flat(), c = cur.flat();
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] < 0.0 && c[i] > floor) return true;
  return false;
}

}  // namespace

FixedPointCertificate solve(const SelfMap& map, const SoftConeMetric& metric, const ContractionSpec& spec,
                            const SoftVector& x0, const StopCriterion& stop, const SolveOptions& options) {
  if (spec.family == Family::BanachPower) return solve_power(map, metric, spec, x0, stop, options);
  spec.validate();
  check_stop(metric, stop);
  require_same_params(metric.params(), x0.params());
  require_same_params(metric.params(), spec.t.params());
  if (x0.dim() != metric.point_dim() || map.point_dim() != metric.point_dim())
    fail(ErrorCode::MismatchedDimension, "initial point, map and metric disagree on the point dimension");
  if (options.max_iter == 0) fail(ErrorCode::InvalidArgument, "max_iter must be positive");

  const SoftReal q = spec.q();
  const SoftReal one = SoftReal::constant(q.params(), 1.0);
  const SoftReal tail_factor = q / (one - q);
  const Cone& cone = metric.cone();

  FixedPointCertificate cert{
      .family = spec.family,
      .t = spec.t,
      .r = spec.r,
      .power = spec.power,
      .q = q,
      .fixed_element = x0,
      .iterations = 0,
      .converged = false,
      .iterates = {x0},
      .residuals = {},
      .residual_trail = {},
      .aposteriori_bound = SoftVector::zero(x0.params(), metric.value_dim()),
      .uniqueness = uniqueness_for(spec),
      .contraction_witnessed = options.contraction && options.contraction->status == ContractionStatus::Witnessed,
      .iterates_in_ball = std::nullopt,
  };

  if (options.contraction && options.contraction->status == ContractionStatus::Refuted)
    throw SolveFailure(ErrorCode::ContractionRefuted, "sampled pair violates the contraction inequality", cert);

  if (spec.family == Family::BanachBall) {
    const SoftVector first = metric(map(x0), x0);
    if (!preceq(cone, first, (one - spec.t) * *spec.ball_radius))
      throw SolveFailure(ErrorCode::BallPreconditionFailed, "d(T x0, x0) exceeds (1 - t) c", cert);
    cert.iterates_in_ball = true;
  }

  std::size_t violations = 0;
  for (std::size_t n = 1; n <= options.max_iter; ++n) {
    const SoftVector next = map(cert.iterates.back());
    SoftVector step = metric(next, cert.iterates.back());

    if (cert.iterates_in_ball && !dominated(cone, metric(x0, next), *spec.ball_radius, kContractionSlack, magnitude({&x0, &next}))) {
      cert.iterates_in_ball = false;
      cert.iterates.push_back(next);
      cert.iterations = n;
      throw SolveFailure(ErrorCode::ContractionRefuted, "iterate left the closed iteration ball", cert);
    }

    if (!cert.residuals.empty() && ratio_violated(cone, q, options.ratio_slack, cert.residuals.back(), step, next)) {
      if (++violations >= options.refute_after) {
        cert.iterates.push_back(next);
        cert.residuals.push_back(step);
        cert.iterations = n;
        cert.fixed_element = next;
        throw SolveFailure(ErrorCode::ContractionRefuted,
                           "step ratio exceeded q for " + std::to_string(violations) + " consecutive steps", cert);
      }
    } else {
      violations = 0;
    }

    cert.aposteriori_bound = tail_factor * step;
    cert.residual_trail.push_back(norm(step, options.nrm));
    cert.residuals.push_back(std::move(step));
    cert.iterates.push_back(next);
    cert.fixed_element = next;
    cert.iterations = n;

    if (stop_reached(metric, stop, cert.aposteriori_bound, options.nrm)) {
      cert.converged = true;
      return cert;
    }
  }
  throw SolveFailure(ErrorCode::MaxIterExceeded,
                     "no convergence within " + std::to_string(options.max_iter) + " iterations", cert);
}

FixedPointCertificate solve_power(const SelfMap& map, const SoftConeMetric& metric, const ContractionSpec& spec,
                                  const SoftVector& x0, const StopCriterion& stop, const SolveOptions& options) {
  spec.validate();
  if (spec.power == 0) fail(ErrorCode::OutOfRange, "power n out of range");
  ContractionSpec inner = spec;
  inner.family = Family::Banach;
  const SelfMap Tn = power(map, spec.power);

  FixedPointCertificate cert = [&] {
    try {
      return solve(Tn, metric, inner, x0, stop, options);
    } catch (const SolveFailure& e) {
      auto partial = e.partial();
      partial.family = spec.family;
      throw SolveFailure(e.code(), e.what(), std::move(partial));
    }
  }();
  cert.family = spec.family;
  cert.power = spec.power;
  if (spec.power == 1) return cert;

  // T x* must also be a fixed point of T^n; keep iterating T^n while the gap
  // d(T x, x) is still shrinking.
  const SoftReal tail_factor = cert.q / (SoftReal::constant(cert.q.params(), 1.0) - cert.q);
  double best_gap = std::numeric_limits<double>::infinity();
  std::size_t stalled = 0;
  while (true) {
    const SoftVector gap = metric(map(cert.fixed_element), cert.fixed_element);
    if (stop_reached(metric, stop, gap, options.nrm)) return cert;
    const double g = max_label_norm(gap, options.nrm);
    stalled = g < best_gap ? 0 : stalled + 1;
    best_gap = std::min(best_gap, g);
    if (stalled >= options.refute_after || cert.iterations >= options.max_iter)
      throw SolveFailure(ErrorCode::FixedPointNotSharedByT, "T x* differs from x*: d(T x*, x*) = " + std::to_string(g),
                         cert);
    const SoftVector next = Tn(cert.fixed_element);
    SoftVector step = metric(next, cert.fixed_element);
    cert.aposteriori_bound = tail_factor * step;
    cert.residual_trail.push_back(norm(step, options.nrm));
    cert.residuals.push_back(std::move(step));
    cert.iterates.push_back(next);
    cert.fixed_element = next;
    ++cert.iterations;
  }
}

bool cross_check_uniqueness(const FixedPointCertificate& a, const FixedPointCertificate& b,
                            const SoftConeMetric& metric, double tol, InnerNorm nrm) {
  return max_label_norm(metric(a.fixed_element, b.fixed_element), nrm) < tol;
}

}  // namespace softcone
