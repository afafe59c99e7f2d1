#include "softcone/problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace softcone {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump(const Json& j, bool pretty, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(2 * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        dump(it.value(), pretty, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      // arrays of scalars stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += flat && pretty ? ", " : ",";
        if (!flat) newline(depth + 1);
        dump(j[i], pretty, depth + 1, out);
      }
      if (!flat && !j.empty()) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

[[noreturn]] void schema(const std::string& what) { fail(ErrorCode::Schema, what); }

const Json& field(const Json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) schema(ctx + ": missing \"" + key + "\"");
  return j.at(key);
}

double number(const Json& j, const std::string& ctx) {
  if (!j.is_number()) schema(ctx + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(ctx + " must be finite");
  return v;
}

std::uint64_t count(const Json& j, const std::string& ctx) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) schema(ctx + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

void check_params(const Json& j, const ParameterSet& params, const std::string& ctx) {
  if (!j.contains("params")) return;
  const Json& p = j.at("params");
  if (!p.is_array() || p.size() != params.size()) fail(ErrorCode::MismatchedParameters, ctx + ": params differ");
  for (std::size_t i = 0; i < params.size(); ++i)
    if (!p[i].is_string() || p[i].get<std::string>() != params.label(i))
      fail(ErrorCode::MismatchedParameters, ctx + ": params differ");
}

std::vector<double> tuple(const Json& j, std::size_t dim, const std::string& ctx) {
  if (dim == 1 && j.is_number()) return {number(j, ctx)};
  if (!j.is_array() || j.size() != dim)
    fail(ErrorCode::MismatchedDimension, ctx + " must have " + std::to_string(dim) + " coordinates");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(number(e, ctx));
  return out;
}

std::vector<double> matrix(const Json& j, std::size_t dim, const std::string& ctx) {
  if (!j.is_array() || j.size() != dim) fail(ErrorCode::MismatchedDimension, ctx + " must be " + std::to_string(dim) + "x" + std::to_string(dim));
  std::vector<double> out;
  for (const auto& row : j) {
    const auto r = tuple(row, dim, ctx);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

ParameterSet parse_params(const Json& j) {
  const Json& p = field(j, "params", "problem");
  if (!p.is_array() || p.empty()) schema("params must be a non-empty array of labels");
  std::vector<std::string> labels;
  for (const auto& e : p) {
    if (!e.is_string()) schema("params must be strings");
    labels.push_back(e.get<std::string>());
  }
  return ParameterSet(std::move(labels));
}

std::string name_of(const Json& j, const char* key, const std::string& ctx) {
  const Json& v = field(j, key, ctx);
  if (!v.is_string()) schema(ctx + "." + key + " must be a string");
  return v.get<std::string>();
}

SoftConeMetric parse_metric(const Json& j, const ParameterSet& params, std::size_t dim) {
  const std::string type = name_of(j, "type", "metric");
  if (type == "example") {
    if (dim != 1) fail(ErrorCode::MismatchedDimension, "example metric is defined on soft reals (dim 1)");
    const SoftReal alpha = j.contains("alpha") ? soft_real_from_json(j.at("alpha"), params, "metric.alpha")
                                               : SoftReal::constant(params, 1.0);
    return example_metric(alpha);
  }
  if (type == "crisp") {
    const std::string name = name_of(j, "name", "metric");
    if (!has_crisp_metric(name)) schema("unknown crisp metric '" + name + "'");
    return from_crisp(crisp_metric(name, dim), params);
  }
  if (type == "family") {
    const Json& members = field(j, "members", "metric");
    if (!members.is_object()) schema("metric.members must be an object");
    std::map<std::string, CrispConeMetric> family;
    for (auto it = members.begin(); it != members.end(); ++it) {
      if (!it.value().is_string()) schema("metric.members values must be metric names");
      const std::string name = it.value().get<std::string>();
      if (!has_crisp_metric(name)) schema("unknown crisp metric '" + name + "'");
      family.emplace(it.key(), crisp_metric(name, dim));
    }
    return from_family(params, family);
  }
  if (type == "registered") {
    const std::string name = name_of(j, "name", "metric");
    if (!has_registered_metric(name)) schema("unknown registered metric '" + name + "'");
    return make_registered_metric(name, params, dim);
  }
  schema("unknown metric type '" + type + "'");
}

SoftConeMetric apply_cone(SoftConeMetric metric, const Json& j) {
  const std::string kind = name_of(j, "kind", "cone");
  std::optional<Cone> cone;
  if (kind == "orthant") {
    const std::size_t dim = j.contains("dim") ? count(j.at("dim"), "cone.dim") : metric.value_dim();
    if (dim != metric.value_dim())
      fail(ErrorCode::MismatchedDimension, "cone dimension differs from the metric's value dimension");
    if (metric.cone().kind() == Cone::Kind::Orthant) return metric;
    cone.emplace(orthant_cone(metric.params(), dim));
  } else if (kind == "custom") {
    const std::string id = name_of(j, "id", "cone");
    if (!has_registered_cone(id)) schema("unknown cone '" + id + "'");
    cone.emplace(make_registered_cone(id, metric.params(), metric.value_dim()));
  } else {
    schema("unknown cone kind '" + kind + "'");
  }
  const std::string name = metric.name();
  const ParameterSet params = metric.params();
  const std::size_t point_dim = metric.point_dim();
  return SoftConeMetric(name, params, point_dim, *std::move(cone),
                        [m = std::move(metric)](const SoftVector& x, const SoftVector& y) { return m(x, y); });
}

SelfMap parse_map(const Json& j, const ParameterSet& params, std::size_t dim) {
  const std::string type = name_of(j, "type", "map");
  if (type == "scalar_affine") {
    if (dim != 1) fail(ErrorCode::MismatchedDimension, "scalar_affine needs dim 1");
    return scalar_affine(soft_real_from_json(field(j, "a", "map"), params, "map.a"),
                         soft_real_from_json(field(j, "b", "map"), params, "map.b"));
  }
  if (type == "matrix_affine") {
    std::vector<AffineLabel> data;
    if (j.contains("per_label")) {
      const Json& per = j.at("per_label");
      for (const auto& label : params.labels()) {
        const Json& e = field(per, label.c_str(), "map.per_label");
        data.push_back({matrix(field(e, "M", "map"), dim, "map.M"), tuple(field(e, "b", "map"), dim, "map.b")});
      }
    } else {
      const AffineLabel shared{matrix(field(j, "M", "map"), dim, "map.M"), tuple(field(j, "b", "map"), dim, "map.b")};
      data.assign(params.size(), shared);
    }
    return matrix_affine(params, dim, std::move(data));
  }
  if (type == "registered") {
    const std::string name = name_of(j, "name", "map");
    if (!has_registered_map(name)) schema("unknown registered map '" + name + "'");
    SelfMap m = make_registered_map(name, params);
    if (m.point_dim() != dim)
      fail(ErrorCode::MismatchedDimension, "map '" + name + "' needs dim " + std::to_string(m.point_dim()));
    return m;
  }
  schema("unknown map type '" + type + "'");
}

ContractionSpec parse_spec(const Json& j, const ParameterSet& params, std::size_t value_dim) {
  const std::string fam = name_of(j, "family", "spec");
  const auto family = parse_family(fam);
  if (!family) schema("unknown family '" + fam + "'");
  ContractionSpec spec{.family = *family, .t = soft_real_from_json(field(j, "t", "spec"), params, "spec.t")};
  if (j.contains("r")) spec.r = soft_real_from_json(j.at("r"), params, "spec.r");
  if (j.contains("n")) {
    spec.power = count(j.at("n"), "spec.n");
    if (spec.power == 0) fail(ErrorCode::OutOfRange, "power n out of range");
  }
  if (j.contains("ball"))
    spec.ball_radius = soft_vector_from_json(field(j.at("ball"), "radius", "spec.ball"), params, value_dim,
                                             "spec.ball.radius");
  spec.validate();
  return spec;
}

StopCriterion parse_stop(const Json& j, const ParameterSet& params, std::size_t value_dim) {
  if (!j.is_object() || j.contains("c") == j.contains("norm_tol")) schema("stop needs exactly one of c or norm_tol");
  if (j.contains("c")) return StopCriterion::by_c(soft_vector_from_json(j.at("c"), params, value_dim, "stop.c"));
  const double tol = number(j.at("norm_tol"), "stop.norm_tol");
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "norm_tol must be positive");
  return StopCriterion::by_norm(tol);
}

}  // namespace

std::string canonical_dump(const Json& j, bool pretty) {
  std::string out;
  dump(j, pretty, 0, out);
  if (pretty) out += '\n';
  return out;
}

Json to_json(const SoftReal& r) {
  Json values = Json::object();
  for (std::size_t i = 0; i < r.size(); ++i) values[r.params().label(i)] = r[i];
  return {{"params", r.params().labels()}, {"values", values}};
}

Json to_json(const SoftVector& x) {
  Json values = Json::object();
  for (std::size_t l = 0; l < x.labels(); ++l) {
    const auto t = x.at(l);
    values[x.params().label(l)] = std::vector<double>(t.begin(), t.end());
  }
  return {{"params", x.params().labels()}, {"dim", x.dim()}, {"values", values}};
}

SoftReal soft_real_from_json(const Json& j, const ParameterSet& params, const std::string& ctx) {
  if (j.is_number()) return SoftReal::constant(params, number(j, ctx));
  if (!j.is_object()) schema(ctx + " must be a number or a soft real object");
  check_params(j, params, ctx);
  const Json& values = field(j, "values", ctx);
  std::vector<double> out;
  for (const auto& label : params.labels()) {
    if (!values.contains(label)) fail(ErrorCode::MissingLabel, ctx + ": no value for label '" + label + "'");
    out.push_back(number(values.at(label), ctx));
  }
  if (values.size() != params.size()) fail(ErrorCode::MismatchedParameters, ctx + ": unknown label in values");
  return SoftReal(params, std::move(out));
}

SoftVector soft_vector_from_json(const Json& j, const ParameterSet& params, std::size_t dim, const std::string& ctx) {
  if (j.is_number() || j.is_array()) return SoftVector::constant(params, tuple(j, dim, ctx));
  if (!j.is_object()) schema(ctx + " must be a number, an array or a soft vector object");
  check_params(j, params, ctx);
  if (j.contains("dim") && count(j.at("dim"), ctx + ".dim") != dim)
    fail(ErrorCode::MismatchedDimension, ctx + " must have dim " + std::to_string(dim));
  const Json& values = field(j, "values", ctx);
  std::vector<double> out;
  for (const auto& label : params.labels()) {
    if (!values.contains(label)) fail(ErrorCode::MissingLabel, ctx + ": no value for label '" + label + "'");
    const auto t = tuple(values.at(label), dim, ctx);
    out.insert(out.end(), t.begin(), t.end());
  }
  if (values.size() != params.size()) fail(ErrorCode::MismatchedParameters, ctx + ": unknown label in values");
  return SoftVector(params, dim, std::move(out));
}

Json certificate_to_json(const FixedPointCertificate& cert, ContractionStatus contraction) {
  Json j{
      {"family", std::string(to_string(cert.family))},
      {"t", to_json(cert.t)},
      {"q", to_json(cert.q)},
      {"fixed_element", to_json(cert.fixed_element)},
      {"iterations", cert.iterations},
      {"converged", cert.converged},
      {"uniqueness", std::string(to_string(cert.uniqueness))},
      {"contraction_witnessed", cert.contraction_witnessed},
      {"contraction_status", std::string(to_string(contraction))},
      {"final_aposteriori", to_json(cert.aposteriori_bound)},
  };
  if (cert.r) j["r"] = to_json(*cert.r);
  if (cert.family == Family::BanachPower) j["n"] = cert.power;
  if (cert.iterates_in_ball) j["iterates_in_ball"] = *cert.iterates_in_ball;
  if (!cert.residuals.empty()) {
    j["first_step"] = to_json(cert.residuals.front());
    j["final_residual"] = to_json(cert.residuals.back());
    j["apriori_bound"] = to_json(cert.apriori_bound_at(cert.iterations));
  }
  return j;
}

Problem load_problem(const Json& j) {
  try {
    if (!j.is_object()) schema("problem must be a JSON object");
    Problem p{.params = parse_params(j)};
    if (j.contains("dim")) {
      p.dim = count(j.at("dim"), "dim");
      if (p.dim == 0) schema("dim must be positive");
    }
    if (j.contains("inner_norm")) {
      const std::string n = name_of(j, "inner_norm", "problem");
      const auto nrm = parse_inner_norm(n);
      if (!nrm) schema("unknown inner_norm '" + n + "'");
      p.nrm = *nrm;
    }
    if (j.contains("seed")) p.seed = count(j.at("seed"), "seed");
    if (j.contains("verify_trials")) p.verify_trials = count(j.at("verify_trials"), "verify_trials");
    if (j.contains("max_iter")) {
      p.max_iter = count(j.at("max_iter"), "max_iter");
      if (*p.max_iter == 0) fail(ErrorCode::InvalidArgument, "max_iter must be positive");
    }
    if (j.contains("metric")) {
      p.metric.emplace(parse_metric(j.at("metric"), p.params, p.dim));
      if (j.contains("cone")) p.metric.emplace(apply_cone(*std::move(p.metric), j.at("cone")));
    } else if (j.contains("cone")) {
      schema("cone given without a metric");
    }
    if (j.contains("map")) p.map.emplace(parse_map(j.at("map"), p.params, p.dim));
    if (j.contains("x0")) p.x0.emplace(soft_vector_from_json(j.at("x0"), p.params, p.dim, "x0"));
    if (j.contains("spec") || j.contains("stop")) {
      if (!p.metric) schema("spec and stop need a metric");
      if (j.contains("spec")) p.spec.emplace(parse_spec(j.at("spec"), p.params, p.metric->value_dim()));
      if (j.contains("stop")) p.stop.emplace(parse_stop(j.at("stop"), p.params, p.metric->value_dim()));
    }
    return p;
  } catch (const Json::exception& e) {
    schema(std::string("malformed problem: ") + e.what());
  }
}

Problem load_problem_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
  return load_problem(j);
}

Problem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot read problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_problem_string(ss.str());
}

const SoftConeMetric& require_metric(const Problem& p) {
  if (!p.metric) schema("problem has no metric");
  return *p.metric;
}

SolveResult solve_problem(const Problem& p) {
  const SoftConeMetric& metric = require_metric(p);
  if (!p.map) schema("problem has no map");
  if (!p.spec) schema("problem has no spec");
  if (!p.x0) schema("problem has no x0");
  if (!p.stop) schema("problem has no stop criterion");

  SolveOptions opts;
  opts.max_iter = p.max_iter.value_or(kDefaultMaxIter);
  opts.nrm = p.nrm;
  opts.contraction = verify_contraction(*p.map, metric, *p.spec, independent_pairs(box_around_sampler(*p.x0, 10.0)),
                                        p.verify_trials, p.seed);
  const ContractionStatus status = opts.contraction->status;
  return {solve(*p.map, metric, *p.spec, *p.x0, *p.stop, opts), status};
}

std::string format_axiom_reports(const std::vector<AxiomReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    out += r.axiom + (r.passed() ? " PASS" : " FAIL") + " trials=" + std::to_string(r.trials) +
           " failures=" + std::to_string(r.failures) + " worst_violation=" + format_double(r.worst_violation) + "\n";
  }
  for (const auto& r : reports) {
    if (r.passed()) continue;
    out += r.axiom + " counterexample:";
    for (const auto& x : r.counterexample) out += " " + canonical_dump(to_json(x), false);
    out += "\n";
  }
  return out;
}

std::string slice_problem(const Problem& p, const std::string& label, std::uint64_t seed) {
  const SoftConeMetric& metric = require_metric(p);
  const std::size_t i = p.params.index_of(label);
  const SlicedMetric sliced = slice(metric, SliceOptions{.seed = seed});
  const CrispConeMetric& member = sliced.members.at(label);

  const auto tuple_json = [](std::span<const double> t) { return canonical_dump(Json(std::vector<double>(t.begin(), t.end())), false); };
  std::string out = "label " + label + "\n";
  const PointSampler sampler = uniform_box_sampler(p.params, metric.point_dim());
  for (std::size_t k = 0; k < 10; ++k) {
    Rng rng(derive_seed(seed, (1u << 24) + k));
    const SoftVector x = sampler(rng), y = sampler(rng);
    out += "r=" + tuple_json(x.at(i)) + " s=" + tuple_json(y.at(i)) + " d=" + tuple_json(member(x.at(i), y.at(i))) + "\n";
  }
  out += format_axiom_reports(sliced.crisp_axioms.at(label));
  return out;
}

}  // namespace softcone
