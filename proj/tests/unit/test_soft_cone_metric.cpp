#include <cmath>

#include "helpers.hpp"
#include "softcone/soft_cone_metric.hpp"

using namespace softcone;
using testutil::real;
using testutil::scalar_vec;
using testutil::vec;

namespace {

bool all_pass(const std::vector<AxiomReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed()) return false;
  return reports.size() == 4;
}

const AxiomReport& report(const std::vector<AxiomReport>& reports, const std::string& axiom) {
  for (const auto& r : reports)
    if (r.axiom == axiom) return r;
  FAIL("no report for " << axiom);
  return reports.front();
}

}  // namespace

TEST_SUITE("soft_cone_metric") {
  TEST_CASE("example metric evaluates the displayed formula") {
    const ParameterSet p = testutil::ab();
    const SoftConeMetric d = example_metric(real(p, {2, 3}));
    CHECK(d(scalar_vec(p, {1, 4}), scalar_vec(p, {3, 1})) == vec(p, {{2, 4}, {3, 9}}));
    CHECK(d(scalar_vec(p, {1, 4}), scalar_vec(p, {1, 4})).is_zero());
    CHECK(d.value_dim() == 2);
    CHECK_ERROR_CODE(example_metric(real(p, {1, -1})), ErrorCode::NegativeAlpha);
    CHECK_ERROR_CODE(d(vec(p, {{1, 2}, {3, 4}}), vec(p, {{1, 2}, {3, 4}})), ErrorCode::MismatchedDimension);
  }

  TEST_CASE("example metric with alpha = 0 keeps the axioms") {
    const ParameterSet p = testutil::ab();
    const SoftConeMetric d = example_metric(SoftReal::constant(p, 0.0));
    const SoftVector v = d(scalar_vec(p, {1, 2}), scalar_vec(p, {-1, 5}));
    CHECK(v(0, 1) == 0.0);
    CHECK(v(1, 1) == 0.0);
    CHECK(all_pass(check_axioms(d, 1000, 1)));
  }

  TEST_CASE("family metric evaluates label-wise") {
    const ParameterSet p = testutil::ab();
    const SoftConeMetric d = from_family(p, {{"a", crisp_metric("abs")}, {"b", crisp_metric("abs2")}});
    CHECK(d(scalar_vec(p, {1, 1}), scalar_vec(p, {0, 0})) == scalar_vec(p, {1, 2}));
    CHECK(d(scalar_vec(p, {3, 3}), scalar_vec(p, {3, 3})).is_zero());
    CHECK_ERROR_CODE(from_family(p, {{"a", crisp_metric("abs")}}), ErrorCode::MissingLabel);
    CHECK_ERROR_CODE(from_family(p, {{"a", crisp_metric("abs")}, {"b", crisp_metric("euclidean", 2)}}),
                     ErrorCode::MismatchedDimension);
  }

  TEST_CASE("copies of one crisp metric reproduce from_crisp") {
    const ParameterSet p = testutil::ab();
    const SoftConeMetric fam = from_family(p, {{"a", crisp_metric("abs")}, {"b", crisp_metric("abs")}});
    const SoftConeMetric gen = from_crisp(crisp_metric("abs"), p);
    const PointSampler sample = uniform_box_sampler(p, 1);
    for (std::uint64_t t = 0; t < 200; ++t) {
      Rng rng(derive_seed(3, t));
      const SoftVector x = sample(rng), y = sample(rng);
      CHECK(fam(x, y) == gen(x, y));
    }
  }

  TEST_CASE("from_crisp on constant soft elements is constant") {
    const ParameterSet p{"a", "b", "c"};
    const SoftConeMetric d = from_crisp(crisp_metric("abs"), p);
    CHECK(d(scalar_vec(p, {2, 2, 2}), scalar_vec(p, {-1, -1, -1})) == scalar_vec(p, {3, 3, 3}));
  }

  TEST_CASE("from_crisp(abs) equals the norm-induced soft metric") {
    const ParameterSet p = testutil::ab();
    const SoftConeMetric d = from_crisp(crisp_metric("abs"), p);
    const PointSampler sample = uniform_box_sampler(p, 1);
    for (std::uint64_t t = 0; t < 500; ++t) {
      Rng rng(derive_seed(4, t));
      const SoftVector x = sample(rng), y = sample(rng);
      CHECK(d(x, y) == SoftVector::from_real(norm_metric(x, y)));
    }
  }

  TEST_CASE("built-in metrics pass the axiom engine") {
    const ParameterSet p = testutil::ab();
    CHECK(all_pass(check_axioms(example_metric(SoftReal::constant(p, 1.0)), 1000, 2)));
    CHECK(all_pass(check_axioms(example_metric(real(p, {2, 3})), 1000, 2)));
    CHECK(all_pass(check_axioms(from_crisp(crisp_metric("abs"), p), 1000, 2)));
    CHECK(all_pass(check_axioms(from_crisp(crisp_metric("discrete"), p), 1000, 2)));
    CHECK(all_pass(check_axioms(from_crisp(crisp_metric("euclidean", 3), p), 1000, 2)));
    CHECK(all_pass(check_axioms(from_crisp(crisp_metric("abs", 2), p), 1000, 2)));
    CHECK(all_pass(check_axioms(make_registered_metric("cross_label_max", p, 1), 1000, 2)));
  }

  TEST_CASE("positive part metric fails symmetry with a counterexample") {
    const ParameterSet p = testutil::ab();
    const auto reports = check_axioms(make_registered_metric("positive_part", p, 1), 1000, 3);
    const AxiomReport& d2 = report(reports, "d2");
    CHECK_FALSE(d2.passed());
    REQUIRE(d2.counterexample.size() == 2);
    const SoftConeMetric d = make_registered_metric("positive_part", p, 1);
    const SoftVector& x = d2.counterexample[0];
    const SoftVector& y = d2.counterexample[1];
    CHECK_FALSE(d(x, y) == d(y, x));
    for (const auto& r : reports) CHECK((r.failures == 0) == r.counterexample.empty());
  }

  TEST_CASE("axiom engine is deterministic per seed") {
    const ParameterSet p = testutil::ab();
    const SoftConeMetric d = make_registered_metric("positive_part", p, 1);
    const auto r1 = check_axioms(d, 300, 9), r2 = check_axioms(d, 300, 9);
    for (std::size_t i = 0; i < r1.size(); ++i) {
      CHECK(r1[i].failures == r2[i].failures);
      CHECK(r1[i].worst_violation == r2[i].worst_violation);
    }
    CHECK_ERROR_CODE(check_axioms(d, 0, 9), ErrorCode::InvalidArgument);
  }

  TEST_CASE("triangle violation magnitude") {
    const ParameterSet a{"a"};
    // squared distance breaks the triangle inequality
    const SoftConeMetric sq("squared", a, 1, orthant_cone(a, 1), [](const SoftVector& x, const SoftVector& y) {
      const double d = x(0, 0) - y(0, 0);
      return SoftVector(x.params(), 1, {d * d});
    });
    const auto reports = check_axioms(sq, 1000, 4);
    const AxiomReport& d3 = report(reports, "d3");
    CHECK_FALSE(d3.passed());
    CHECK(d3.worst_violation > 0.0);
    CHECK(d3.counterexample.size() == 3);
  }

  TEST_CASE("slicing a family returns its members") {
    const ParameterSet p = testutil::ab();
    const std::map<std::string, CrispConeMetric> family{{"a", crisp_metric("abs")}, {"b", crisp_metric("abs2")}};
    const SlicedMetric sliced = slice(from_family(p, family), SliceOptions{.seed = 5});
    const PointSampler sample = uniform_box_sampler(ParameterSet{"a"}, 1);
    for (const auto& [label, member] : family) {
      for (std::uint64_t t = 0; t < 1000; ++t) {
        Rng rng(derive_seed(6, t));
        const SoftVector r = sample(rng), s = sample(rng);
        CHECK(sliced.members.at(label)(r.at(0), s.at(0)) == member(r.at(0), s.at(0)));
      }
      CHECK(all_pass(sliced.crisp_axioms.at(label)));
    }
  }

  TEST_CASE("slicing from_crisp gives the constant family") {
    const ParameterSet p{"a", "b", "c"};
    const CrispConeMetric rho = crisp_metric("discrete");
    const SlicedMetric sliced = slice(from_crisp(rho, p));
    const std::vector<double> r{1.5}, s{2.0};
    for (const auto& label : p.labels()) {
      CHECK(sliced.members.at(label)(r, s) == rho(r, s));
      CHECK(sliced.members.at(label)(r, r) == rho(r, r));
    }
  }

  TEST_CASE("re-assembling a sliced metric is the identity") {
    const ParameterSet p = testutil::ab();
    const SoftConeMetric d = example_metric(real(p, {2, 3}));
    const SoftConeMetric back = from_family(p, slice(d).members);
    const PointSampler sample = uniform_box_sampler(p, 1);
    for (std::uint64_t t = 0; t < 300; ++t) {
      Rng rng(derive_seed(8, t));
      const SoftVector x = sample(rng), y = sample(rng);
      CHECK(back(x, y) == d(x, y));
    }
  }

  TEST_CASE("cross-label max metric violates d4 with a witness") {
    const ParameterSet p = testutil::ab();
    const SoftConeMetric d = make_registered_metric("cross_label_max", p, 1);
    bool thrown = false;
    try {
      slice(d);
    } catch (const D4Violation& v) {
      thrown = true;
      const std::size_t l = p.index_of(v.label());
      CHECK(v.x1().at(l)[0] == v.x2().at(l)[0]);
      CHECK(v.y1().at(l)[0] == v.y2().at(l)[0]);
      CHECK(d(v.x1(), v.y1()).at(l)[0] != d(v.x2(), v.y2()).at(l)[0]);
      CHECK(v.code() == ErrorCode::D4Violated);
    }
    CHECK(thrown);
  }

  TEST_CASE("registries reject unknown names") {
    CHECK_FALSE(has_crisp_metric("nope"));
    CHECK_FALSE(has_registered_metric("nope"));
    CHECK(has_registered_metric("positive_part"));
    CHECK_THROWS_AS(crisp_metric("nope"), Error);
  }
}
