#include "softcone/soft_cone_metric.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace softcone {

std::vector<double> CrispConeMetric::operator()(std::span<const double> x, std::span<const double> y) const {
  if (x.size() != point_dim || y.size() != point_dim)
    fail(ErrorCode::MismatchedDimension, "crisp metric '" + name + "' received points of the wrong dimension");
  auto v = eval(x, y);
  if (v.size() != value_dim) fail(ErrorCode::MismatchedDimension, "crisp metric '" + name + "' returned a wrong-sized value");
  return v;
}

namespace {

CrispConeMetric scaled_abs(std::string name, double scale, std::size_t point_dim) {
  return {std::move(name), point_dim, point_dim, [scale](std::span<const double> x, std::span<const double> y) {
            std::vector<double> out(x.size());
            for (std::size_t k = 0; k < x.size(); ++k) out[k] = scale * std::fabs(x[k] - y[k]);
            return out;
          }};
}

struct CrispRegistry {
  std::mutex mutex;
  std::map<std::string, CrispMetricFactory> factories{
      {"abs", [](std::size_t n) { return scaled_abs("abs", 1.0, n); }},
      {"abs2", [](std::size_t n) { return scaled_abs("abs2", 2.0, n); }},
      {"euclidean",
       [](std::size_t n) {
         return CrispConeMetric{"euclidean", n, 1, [](std::span<const double> x, std::span<const double> y) {
                                  double acc = 0.0;
                                  for (std::size_t k = 0; k < x.size(); ++k) acc = std::hypot(acc, x[k] - y[k]);
                                  return std::vector<double>{acc};
                                }};
       }},
      {"discrete",
       [](std::size_t n) {
         return CrispConeMetric{"discrete", n, 1, [](std::span<const double> x, std::span<const double> y) {
                                  return std::vector<double>{std::equal(x.begin(), x.end(), y.begin()) ? 0.0 : 1.0};
                                }};
       }},
  };
};

CrispRegistry& crisp_registry() {
  static CrispRegistry registry;
  return registry;
}

}  // namespace

CrispConeMetric crisp_metric(const std::string& name, std::size_t point_dim) {
  if (point_dim == 0) fail(ErrorCode::InvalidArgument, "point dimension must be positive");
  CrispMetricFactory factory;
  {
    auto& reg = crisp_registry();
    std::lock_guard lock(reg.mutex);
    auto it = reg.factories.find(name);
    if (it == reg.factories.end()) fail(ErrorCode::Schema, "unknown crisp metric '" + name + "'");
    factory = it->second;
  }
  return factory(point_dim);
}

void register_crisp_metric(const std::string& name, CrispMetricFactory factory) {
  auto& reg = crisp_registry();
  std::lock_guard lock(reg.mutex);
  reg.factories[name] = std::move(factory);
}

bool has_crisp_metric(const std::string& name) {
  auto& reg = crisp_registry();
  std::lock_guard lock(reg.mutex);
  return reg.factories.count(name) != 0;
}

// ---------------------------------------------------------------------------

SoftConeMetric::SoftConeMetric(std::string name, ParameterSet params, std::size_t point_dim, Cone cone,
                               Evaluator eval)
    : name_(std::move(name)), params_(std::move(params)), point_dim_(point_dim), cone_(std::move(cone)),
      eval_(std::move(eval)) {
  if (point_dim_ == 0) fail(ErrorCode::InvalidArgument, "point dimension must be positive");
  require_same_params(params_, cone_.params());
  if (!eval_) fail(ErrorCode::InvalidArgument, "metric evaluator must be callable");
}

SoftVector SoftConeMetric::operator()(const SoftVector& x, const SoftVector& y) const {
  require_compatible(x, y);
  require_same_params(params_, x.params());
  if (x.dim() != point_dim_) fail(ErrorCode::MismatchedDimension, "point dimension differs from metric point space");
  SoftVector d = eval_(x, y);
  require_same_params(params_, d.params());
  if (d.dim() != cone_.dim()) fail(ErrorCode::MismatchedDimension, "metric value has the wrong dimension");
  return d;
}

SoftConeMetric example_metric(const SoftReal& alpha) {
  for (double a : alpha.values())
    if (a < 0.0) fail(ErrorCode::NegativeAlpha, "alpha must be non-negative at every label");
  const ParameterSet& params = alpha.params();
  auto eval = [alpha](const SoftVector& x, const SoftVector& y) {
    std::vector<double> out(2 * x.labels());
    for (std::size_t l = 0; l < x.labels(); ++l) {
      const double gap = std::fabs(x(l, 0) - y(l, 0));
      out[2 * l] = gap;
      out[2 * l + 1] = alpha[l] * gap;
    }
    return SoftVector(x.params(), 2, std::move(out));
  };
  return SoftConeMetric("example", params, 1, orthant_cone(params, 2), eval);
}

SoftConeMetric from_family(const ParameterSet& params, const std::map<std::string, CrispConeMetric>& family) {
  std::vector<CrispConeMetric> members;
  members.reserve(params.size());
  for (const auto& label : params.labels()) {
    auto it = family.find(label);
    if (it == family.end()) fail(ErrorCode::MissingLabel, "family has no member for label '" + label + "'");
    members.push_back(it->second);
  }
  for (const auto& [label, _] : family)
    if (!params.find(label)) fail(ErrorCode::MissingLabel, "family member '" + label + "' is not a parameter");
  const std::size_t point_dim = members.front().point_dim, value_dim = members.front().value_dim;
  std::string name = "family(";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].point_dim != point_dim || members[i].value_dim != value_dim)
      fail(ErrorCode::MismatchedDimension, "family members must share point and value dimensions");
    name += (i ? "," : "") + params.label(i) + ":" + members[i].name;
  }
  name += ")";
  auto eval = [members, value_dim](const SoftVector& x, const SoftVector& y) {
    std::vector<double> out;
    out.reserve(x.labels() * value_dim);
    for (std::size_t l = 0; l < x.labels(); ++l) {
      const auto v = members[l](x.at(l), y.at(l));
      out.insert(out.end(), v.begin(), v.end());
    }
    return SoftVector(x.params(), value_dim, std::move(out));
  };
  return SoftConeMetric(std::move(name), params, point_dim, orthant_cone(params, value_dim), eval);
}

SoftConeMetric from_crisp(const CrispConeMetric& rho, const ParameterSet& params) {
  std::map<std::string, CrispConeMetric> family;
  for (const auto& label : params.labels()) family.emplace(label, rho);
  auto metric = from_family(params, family);
  return SoftConeMetric("crisp(" + rho.name + ")", params, metric.point_dim(), metric.cone(),
                        [metric](const SoftVector& x, const SoftVector& y) { return metric(x, y); });
}

namespace {

SoftConeMetric positive_part_metric(const ParameterSet& params, std::size_t point_dim) {
  auto eval = [](const SoftVector& x, const SoftVector& y) {
    std::vector<double> out(x.flat().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(0.0, x.flat()[i] - y.flat()[i]);
    return SoftVector(x.params(), x.dim(), std::move(out));
  };
  return SoftConeMetric("positive_part", params, point_dim, orthant_cone(params, point_dim), eval);
}

SoftConeMetric cross_label_max_metric(const ParameterSet& params, std::size_t point_dim) {
  auto eval = [](const SoftVector& x, const SoftVector& y) {
    const double m = max_label_norm(x - y, InnerNorm::Max);
    return SoftVector(x.params(), 1, std::vector<double>(x.labels(), m));
  };
  return SoftConeMetric("cross_label_max", params, point_dim, orthant_cone(params, 1), eval);
}

struct MetricRegistry {
  std::mutex mutex;
  std::map<std::string, SoftMetricFactory> factories{{"positive_part", positive_part_metric},
                                                     {"cross_label_max", cross_label_max_metric}};
};

MetricRegistry& metric_registry() {
  static MetricRegistry registry;
  return registry;
}

}  // namespace

SoftConeMetric make_registered_metric(const std::string& name, const ParameterSet& params, std::size_t point_dim) {
  SoftMetricFactory factory;
  {
    auto& reg = metric_registry();
    std::lock_guard lock(reg.mutex);
    auto it = reg.factories.find(name);
    if (it == reg.factories.end()) fail(ErrorCode::Schema, "unknown registered metric '" + name + "'");
    factory = it->second;
  }
  return factory(params, point_dim);
}

void register_metric(const std::string& name, SoftMetricFactory factory) {
  auto& reg = metric_registry();
  std::lock_guard lock(reg.mutex);
  reg.factories[name] = std::move(factory);
}

bool has_registered_metric(const std::string& name) {
  auto& reg = metric_registry();
  std::lock_guard lock(reg.mutex);
  return reg.factories.count(name) != 0;
}

// ---------------------------------------------------------------------------
// Axiom engine

namespace {

void note(AxiomReport& r, double magnitude, std::initializer_list<SoftVector> points) {
  if (r.failures++ == 0) r.counterexample.assign(points);
  r.worst_violation = std::max(r.worst_violation, magnitude);
}

double max_abs(const SoftVector& v) {
  double m = 0.0;
  for (double c : v.flat()) m = std::max(m, std::fabs(c));
  return m;
}

double min_coord(const SoftVector& v) { return *std::min_element(v.flat().begin(), v.flat().end()); }

// y agrees with x on a random subset of labels, so d(x, y) is tested on
// pairs that coincide partially as well as fully.
SoftVector related_point(Rng& rng, const PointSampler& sampler, const SoftVector& x) {
  const double roll = uniform(rng, 0.0, 1.0);
  if (roll < 0.1) return x;
  SoftVector y = sampler(rng);
  if (roll < 0.3) {
    for (std::size_t l = 0; l < x.labels(); ++l)
      if (uniform(rng, 0.0, 1.0) < 0.5) y = y.with(l, x.at(l));
  }
  return y;
}

}  // namespace

std::vector<AxiomReport> check_axioms(const SoftConeMetric& metric, const PointSampler& sampler, std::size_t trials,
                                      std::uint64_t seed, double slack) {
  if (trials == 0) fail(ErrorCode::InvalidArgument, "trials must be positive");
  AxiomReport d1{"d1"}, d2{"d2"}, d3{"d3"}, cone{"cone"};
  for (auto* r : {&d1, &d2, &d3, &cone}) r->trials = trials;
  const Cone& P = metric.cone();

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const SoftVector x = sampler(rng);
    const SoftVector y = related_point(rng, sampler, x);
    const SoftVector z = related_point(rng, sampler, x);

    const SoftVector dxy = metric(x, y), dyx = metric(y, x);
    const SoftVector dxz = metric(x, z), dzy = metric(z, y);
    const SoftVector dxx = metric(x, x);

    // d1: Theta < d(x,y) for x != y, d(x,x) = Theta.
    if (!dxx.is_zero()) note(d1, max_abs(dxx), {x, x});
    if (x == y) {
      if (!dxy.is_zero()) note(d1, max_abs(dxy), {x, y});
    } else if (!P.contains(dxy) || dxy.is_zero()) {
      // a zero distance between distinct points is measured by their separation
      note(d1, dxy.is_zero() ? max_abs(x - y) : std::max(0.0, -min_coord(dxy)), {x, y});
    }

    if (!(dxy == dyx)) note(d2, max_abs(dxy - dyx), {x, y});

    const SoftVector gap = dxz + dzy - dxy;
    if (min_coord(gap) < -slack) note(d3, -min_coord(gap), {x, y, z});

    for (const SoftVector* v : {&dxy, &dxz, &dzy})
      if (!P.contains(*v)) {
        note(cone, std::max(0.0, -min_coord(*v)), {x, y, z});
        break;
      }
  }
  return {d1, d2, d3, cone};
}

std::vector<AxiomReport> check_axioms(const SoftConeMetric& metric, std::size_t trials, std::uint64_t seed,
                                      double slack) {
  return check_axioms(metric, uniform_box_sampler(metric.params(), metric.point_dim()), trials, seed, slack);
}

// ---------------------------------------------------------------------------
// Slicing

D4Violation::D4Violation(std::string label, SoftVector x1, SoftVector y1, SoftVector x2, SoftVector y2)
    : Error(ErrorCode::D4Violated, "metric value at '" + label + "' depends on other labels (axiom d4 fails)"),
      label_(std::move(label)), x1_(std::move(x1)), y1_(std::move(y1)), x2_(std::move(x2)), y2_(std::move(y2)) {}

namespace {

// Restriction of the metric's cone to one label, as a cone over {label}.
Cone label_cone(const Cone& cone, std::size_t label) {
  ParameterSet single({cone.params().label(label)});
  const std::size_t dim = cone.dim();
  if (cone.kind() == Cone::Kind::Orthant) return orthant_cone(single, dim);
  auto embed = [cone, label, dim](const SoftVector& v) {
    return SoftVector::zero(cone.params(), dim).with(label, v.at(0));
  };
  return Cone(cone.name() + "@" + cone.params().label(label), Cone::Kind::Custom, single, dim,
              [cone, embed](const SoftVector& v) { return cone.contains(embed(v)); },
              [cone, embed](const SoftVector& v) { return cone.interior_contains(embed(v)); });
}

}  // namespace

SlicedMetric slice(const SoftConeMetric& metric, const SliceOptions& options) {
  const ParameterSet& params = metric.params();
  const PointSampler sampler = options.sampler ? options.sampler : uniform_box_sampler(params, metric.point_dim());
  const SoftVector base = SoftVector::zero(params, metric.point_dim());

  SlicedMetric out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const std::string& label = params.label(i);
    for (std::size_t w = 0; w < options.witnesses_per_label; ++w) {
      Rng rng(derive_seed(options.seed, i * options.witnesses_per_label + w));
      const SoftVector r = sampler(rng);
      const SoftVector s = uniform(rng, 0.0, 1.0) < 0.1 ? r : sampler(rng);
      const SoftVector x1 = sampler(rng).with(i, r.at(i)), y1 = sampler(rng).with(i, s.at(i));
      const SoftVector x2 = w == 0 ? base.with(i, r.at(i)) : sampler(rng).with(i, r.at(i));
      const SoftVector y2 = w == 0 ? base.with(i, s.at(i)) : sampler(rng).with(i, s.at(i));
      const SoftVector d1 = metric(x1, y1), d2 = metric(x2, y2);
      const auto v1 = d1.at(i), v2 = d2.at(i);
      if (!std::equal(v1.begin(), v1.end(), v2.begin())) throw D4Violation(label, x1, y1, x2, y2);
    }

    CrispConeMetric member{metric.name() + "@" + label, metric.point_dim(), metric.value_dim(),
                           [metric, base, i](std::span<const double> r, std::span<const double> s) {
                             const SoftVector d = metric(base.with(i, r), base.with(i, s));
                             const auto v = d.at(i);
                             return std::vector<double>(v.begin(), v.end());
                           }};

    ParameterSet single({label});
    SoftConeMetric crisp_view(member.name, single, member.point_dim, label_cone(metric.cone(), i),
                              [member](const SoftVector& x, const SoftVector& y) {
                                return SoftVector(x.params(), member.value_dim, member(x.at(0), y.at(0)));
                              });
    PointSampler crisp_sampler = [sampler, i, single](Rng& rng) {
      const SoftVector x = sampler(rng);
      const auto v = x.at(i);
      return SoftVector(single, v.size(), std::vector<double>(v.begin(), v.end()));
    };
    out.crisp_axioms[label] =
        check_axioms(crisp_view, crisp_sampler, options.crisp_axiom_trials, derive_seed(options.seed, 1u << 20 | i));
    out.members.emplace(label, std::move(member));
  }
  return out;
}

}  // namespace softcone
