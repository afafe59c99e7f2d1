#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "softcone/convergence.hpp"

using namespace softcone;
using testutil::scalar_vec;
using testutil::vec;

namespace {

SoftVector c_const(const ParameterSet& p, double v) { return SoftVector::constant(p, std::vector<double>{v, v}); }

SoftSequence harmonic(const ParameterSet& p, int length) {
  SoftSequence seq;
  for (int n = 1; n <= length; ++n) seq.push_back(scalar_vec(p, {1.0 / n, 2.0 / n}));
  return seq;
}

}  // namespace

TEST_SUITE("convergence") {
  TEST_CASE("harmonic sequence converges with N = 20") {
    const ParameterSet p = testutil::ab();
    const SoftConeMetric d = example_metric(SoftReal::constant(p, 1.0));
    const auto r = converges_to(harmonic(p, 100), SoftVector::zero(p, 1), d, c_const(p, 0.1));
    CHECK(r.converged());
    REQUIRE(r.index.has_value());
    CHECK(*r.index == 20);
    CHECK(r.residual_trail.size() == 100);
  }

  TEST_CASE("constant sequence converges with N = 0") {
    const ParameterSet p = testutil::ab();
    const SoftConeMetric d = example_metric(SoftReal::constant(p, 1.0));
    const SoftSequence seq(10, scalar_vec(p, {3, -2}));
    const auto r = converges_to(seq, scalar_vec(p, {3, -2}), d, c_const(p, 1e-12));
    CHECK(r.converged());
    CHECK(*r.index == 0);
  }

  TEST_CASE("oscillation is inconclusive") {
    const ParameterSet a{"a"};
    const SoftConeMetric d = example_metric(SoftReal::constant(a, 1.0));
    SoftSequence seq;
    for (int n = 1; n <= 50; ++n) seq.push_back(scalar_vec(a, {n % 2 ? -1.0 : 1.0}));
    const auto r = converges_to(seq, SoftVector::zero(a, 1), d, c_const(a, 0.1));
    CHECK(r.verdict == Verdict::Inconclusive);
    CHECK(is_cauchy(seq, d, c_const(a, 0.1)).verdict == Verdict::Inconclusive);
  }

  TEST_CASE("growing residuals are divergent") {
    const ParameterSet a{"a"};
    const SoftConeMetric d = example_metric(SoftReal::constant(a, 1.0));
    SoftSequence seq;
    for (int n = 1; n <= 30; ++n) seq.push_back(scalar_vec(a, {double(n)}));
    CHECK(converges_to(seq, SoftVector::zero(a, 1), d, c_const(a, 0.1)).verdict == Verdict::Diverged);
    // constant steps do not grow, so the Cauchy check stays undecided
    CHECK(is_cauchy(seq, d, c_const(a, 0.1)).verdict == Verdict::Inconclusive);
    SoftSequence doubling;
    for (int n = 1; n <= 30; ++n) doubling.push_back(scalar_vec(a, {std::ldexp(1.0, n)}));
    CHECK(is_cauchy(doubling, d, c_const(a, 0.1)).verdict == Verdict::Diverged);
    CHECK_FALSE(is_cauchy(doubling, d, c_const(a, 0.1)).cauchy());
  }

  TEST_CASE("c must be interior") {
    const ParameterSet a{"a"};
    const SoftConeMetric d = example_metric(SoftReal::constant(a, 1.0));
    const SoftSequence seq(3, scalar_vec(a, {1}));
    CHECK_ERROR_CODE(converges_to(seq, seq[0], d, vec(a, {{0.1, 0}})), ErrorCode::CNotInterior);
    CHECK_ERROR_CODE(is_cauchy(seq, d, vec(a, {{0.1, 0}})), ErrorCode::CNotInterior);
    CHECK_ERROR_CODE(converges_to(SoftSequence{}, seq[0], d, c_const(a, 1)), ErrorCode::EmptySequence);
  }

  TEST_CASE("partial sums of a geometric series are Cauchy") {
    const ParameterSet a{"a"};
    const SoftConeMetric d = example_metric(SoftReal::constant(a, 1.0));
    SoftSequence seq;
    double s = 0.0;
    for (int n = 1; n <= 40; ++n) seq.push_back(scalar_vec(a, {s += std::ldexp(1.0, -n)}));
    const auto r = is_cauchy(seq, d, c_const(a, 0.01));
    CHECK(r.cauchy());
    // |s_n - s_m| < 2^-n, first good n is 7
    CHECK(*r.index == 6);
  }

  TEST_CASE("convergent implies Cauchy with doubled radius, and radius monotonicity") {
    const ParameterSet p = testutil::ab();
    const SoftConeMetric d = example_metric(SoftReal(p, {1.0, 2.0}));
    for (int k = 0; k < 20; ++k) {
      const double ratio = 0.3 + 0.03 * k;
      SoftSequence seq{scalar_vec(p, {5.0 + k, -3.0})};
      for (int n = 0; n < 200; ++n) seq.push_back(ratio * seq.back() + scalar_vec(p, {1.0, 1.0}));
      const SoftVector limit = scalar_vec(p, {1.0 / (1.0 - ratio), 1.0 / (1.0 - ratio)});
      const SoftVector c = c_const(p, 1e-4);
      const auto conv = converges_to(seq, limit, d, c);
      REQUIRE(conv.converged());
      CHECK(is_cauchy(seq, d, 2.0 * c).cauchy());
      CHECK(converges_to(seq, limit, d, 3.0 * c).converged());
      CHECK(*converges_to(seq, limit, d, 3.0 * c).index <= *conv.index);
    }
  }

  TEST_CASE("norm equivalence agrees on geometric and divergent sequences") {
    const ParameterSet p = testutil::ab();
    const SoftConeMetric d = example_metric(SoftReal::constant(p, 1.0));
    SoftSequence geo, grow;
    for (int n = 1; n <= 80; ++n) {
      geo.push_back(scalar_vec(p, {std::pow(0.7, n), -std::pow(0.6, n)}));
      grow.push_back(scalar_vec(p, {std::pow(1.1, n), 1.0}));
    }
    const auto g = norm_equivalence_check(geo, SoftVector::zero(p, 1), d, InnerNorm::Euclidean, 1e-6, c_const(p, 0.5));
    CHECK(g.cone_verdict);
    CHECK(g.norm_verdict);
    CHECK(g.agree());
    CHECK(g.transferred_bound < 1e-6);
    CHECK(g.rungs > kDefaultLadderRungs);
    const auto v = norm_equivalence_check(grow, SoftVector::zero(p, 1), d, InnerNorm::Euclidean, 1e-6, c_const(p, 0.5));
    CHECK_FALSE(v.cone_verdict);
    CHECK_FALSE(v.norm_verdict);
    CHECK(v.agree());
  }

  TEST_CASE("norm equivalence needs a normal cone") {
    const ParameterSet a{"a"};
    const Cone no_const("plain", Cone::Kind::Custom, a, 1, [](const SoftVector& x) { return x(0, 0) >= 0; },
                        [](const SoftVector& x) { return x(0, 0) > 0; });
    const SoftConeMetric d("abs", a, 1, no_const,
                           [](const SoftVector& x, const SoftVector& y) { return SoftVector::from_real(norm_metric(x, y)); });
    const SoftSequence seq(5, scalar_vec(a, {1}));
    CHECK_ERROR_CODE(norm_equivalence_check(seq, seq[0], d, InnerNorm::Euclidean, 1e-6, scalar_vec(a, {1})),
                     ErrorCode::ConeNotNormal);
  }

  TEST_CASE("c ladder halves") {
    const ParameterSet a{"a"};
    const auto ladder = c_ladder(scalar_vec(a, {1.0}));
    REQUIRE(ladder.size() == kDefaultLadderRungs + 1);
    CHECK(ladder.back()(0, 0) == std::ldexp(1.0, -6));
  }

  TEST_CASE("unique limit check") {
    const ParameterSet p = testutil::ab();
    const SoftConeMetric d = example_metric(SoftReal::constant(p, 1.0));
    SoftSequence seq;
    for (int n = 1; n <= 400; ++n) seq.push_back(scalar_vec(p, {std::pow(0.5, n), std::pow(0.5, n)}));
    const SoftVector zero = SoftVector::zero(p, 1);
    CHECK(unique_limit_check(seq, zero, zero, d, c_const(p, 0.1), 1e-12));
    CHECK(unique_limit_check(seq, zero, scalar_vec(p, {1e-13, 0}), d, c_const(p, 0.1), 1e-12));
    CHECK_ERROR_CODE(unique_limit_check(harmonic(p, 400), zero, scalar_vec(p, {0, 0.5}), d, c_const(p, 0.1), 1e-12),
                     ErrorCode::PreconditionFailed);
  }

  TEST_CASE("residual trace CSV") {
    const ParameterSet p = testutil::ab();
    const std::vector<SoftVector> residuals{vec(p, {{1, 2}, {3, 4}}), vec(p, {{0.5, 0}, {0, 0.25}})};
    std::ostringstream longf, maxf;
    write_residual_csv(longf, residuals);
    write_maxnorm_csv(maxf, residuals, InnerNorm::Max);
    CHECK(longf.str() ==
          "n,label,coordinate,residual_value\n1,a,0,1\n1,a,1,2\n1,b,0,3\n1,b,1,4\n"
          "2,a,0,0.5\n2,a,1,0\n2,b,0,0\n2,b,1,0.25\n");
    CHECK(maxf.str() == "n,residual_maxnorm\n1,4\n2,0.5\n");
  }
}
