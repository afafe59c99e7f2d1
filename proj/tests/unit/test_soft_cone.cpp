#include <cmath>

#include "helpers.hpp"
#include "softcone/sampling.hpp"
#include "softcone/soft_cone.hpp"

using namespace softcone;
using testutil::vec;

TEST_SUITE("soft_cone") {
  TEST_CASE("orthant membership and interior") {
    const ParameterSet p = testutil::ab();
    const Cone P = orthant_cone(p, 2);
    CHECK(P.contains(vec(p, {{1, 0}, {2, 3}})));
    CHECK_FALSE(P.interior_contains(vec(p, {{1, 0}, {2, 3}})));
    CHECK(P.interior_contains(vec(p, {{1, 2}, {3, 4}})));
    CHECK_FALSE(P.contains(vec(p, {{1, -1e-300}, {2, 3}})));
    CHECK(P.contains(SoftVector::zero(p, 2)));
    REQUIRE(P.normal_constant().has_value());
    CHECK(*P.normal_constant() == SoftReal::constant(p, 1.0));
    CHECK_ERROR_CODE(P.contains(SoftVector::zero(p, 3)), ErrorCode::MismatchedDimension);
    CHECK_ERROR_CODE(P.contains(SoftVector::zero(ParameterSet{"a"}, 2)), ErrorCode::MismatchedParameters);
  }

  TEST_CASE("interior margin") {
    const ParameterSet a{"a"};
    const Cone P = orthant_cone(a, 1, 0.5);
    CHECK_FALSE(P.interior_contains(vec(a, {{0.4}})));
    CHECK(P.interior_contains(vec(a, {{0.6}})));
    CHECK_ERROR_CODE(orthant_cone(a, 1, -1.0), ErrorCode::InvalidArgument);
  }

  TEST_CASE("compare examples") {
    const ParameterSet a{"a"};
    const Cone P = orthant_cone(a, 2);
    CHECK(compare(P, vec(a, {{0, 0}}), vec(a, {{1, 1}})) == ConeOrder::WayBelow);
    CHECK(compare(P, vec(a, {{0, 0}}), vec(a, {{1, 0}})) == ConeOrder::Prec);
    CHECK(compare(P, vec(a, {{0, 1}}), vec(a, {{1, 0}})) == ConeOrder::None);
    CHECK(compare(P, vec(a, {{2, 1}}), vec(a, {{2, 1}})) == ConeOrder::Preceq);
  }

  TEST_CASE("order laws on random triples") {
    const ParameterSet p = testutil::ab();
    const Cone P = orthant_cone(p, 2);
    for (std::uint64_t t = 0; t < 2000; ++t) {
      Rng rng(derive_seed(17, t));
      auto draw = [&] {
        std::vector<double> v(4);
        for (auto& x : v) x = std::floor(uniform(rng, 0.0, 3.0));
        return SoftVector(p, 2, v);
      };
      const SoftVector x = draw(), y = draw(), z = draw();
      CHECK(preceq(P, x, x));
      if (preceq(P, x, y) && preceq(P, y, x)) CHECK(x == y);
      if (preceq(P, x, y) && preceq(P, y, z)) CHECK(preceq(P, x, z));
      if (way_below(P, x, y) && preceq(P, y, z)) CHECK(way_below(P, x, z));
      const ConeOrder o = compare(P, x, y);
      if (o == ConeOrder::WayBelow || o == ConeOrder::Prec) CHECK(preceq(P, x, y));
    }
  }

  TEST_CASE("sup_pair") {
    const ParameterSet a{"a"};
    const Cone P = orthant_cone(a, 2);
    CHECK(sup_pair(P, vec(a, {{1, 5}}), vec(a, {{3, 2}})) == vec(a, {{3, 5}}));
    const SoftVector x = vec(a, {{2, 7}});
    CHECK(sup_pair(P, x, x) == x);
    CHECK(sup_pair(P, x, SoftVector::zero(a, 2)) == x);
    const std::vector<SoftVector> xs{vec(a, {{1, 0}}), vec(a, {{0, 4}}), vec(a, {{-1, 2}})};
    CHECK(sup_all(P, xs) == vec(a, {{1, 4}}));
    CHECK_ERROR_CODE(sup_all(P, std::vector<SoftVector>{}), ErrorCode::EmptyCollection);
    CHECK_ERROR_CODE(sup_pair(make_registered_cone("ray", a, 2), x, x), ErrorCode::UnsupportedCone);
  }

  TEST_CASE("sup_pair is the least sampled upper bound") {
    const ParameterSet p = testutil::ab();
    const Cone P = orthant_cone(p, 3);
    const PointSampler sample = uniform_box_sampler(p, 3, -3, 3);
    for (std::uint64_t t = 0; t < 1000; ++t) {
      Rng rng(derive_seed(23, t));
      const SoftVector x = sample(rng), y = sample(rng), z = sample(rng);
      const SoftVector s = sup_pair(P, x, y);
      CHECK(preceq(P, x, s));
      CHECK(preceq(P, y, s));
      if (preceq(P, x, z) && preceq(P, y, z)) CHECK(preceq(P, s, z));
    }
  }

  TEST_CASE("orthant properties pass") {
    const ParameterSet p = testutil::ab();
    const Cone P = orthant_cone(p, 2);
    for (InnerNorm n : {InnerNorm::Euclidean, InnerNorm::Max, InnerNorm::One}) {
      const auto normal = cone_property_check(P, ConeProperty::Normal, 10000, 1, n);
      CHECK(normal.passed);
      REQUIRE(normal.empirical_alpha.has_value());
      CHECK(soft_leq(*normal.empirical_alpha, SoftReal::constant(p, 1.0)));
    }
    for (ConeProperty prop : {ConeProperty::Minihedral, ConeProperty::StronglyMinihedral, ConeProperty::Solid,
                              ConeProperty::Pointed, ConeProperty::ClosedUnderCombination, ConeProperty::Regular}) {
      const auto r = cone_property_check(P, prop, 500, 2);
      CHECK_MESSAGE(r.passed, to_string(prop));
    }
    const auto solid = cone_property_check(P, ConeProperty::Solid, 10, 3);
    REQUIRE(solid.witness.has_value());
    CHECK(P.interior_contains(*solid.witness));
  }

  TEST_CASE("ray cone has empty interior") {
    const ParameterSet a{"a"};
    const Cone ray = make_registered_cone("ray", a, 2);
    CHECK(ray.contains(vec(a, {{3, 0}})));
    CHECK_FALSE(ray.contains(vec(a, {{3, 1}})));
    CHECK_FALSE(cone_property_check(ray, ConeProperty::Solid, 1000, 4).passed);
    CHECK(cone_property_check(ray, ConeProperty::Pointed, 1000, 4).passed);
    CHECK(cone_property_check(ray, ConeProperty::ClosedUnderCombination, 1000, 4).passed);
    CHECK_ERROR_CODE(cone_property_check(ray, ConeProperty::Regular, 10, 4), ErrorCode::UnsupportedProperty);
    CHECK_ERROR_CODE(cone_property_check(ray, ConeProperty::StronglyMinihedral, 10, 4),
                     ErrorCode::UnsupportedProperty);
    CHECK_ERROR_CODE(make_registered_cone("nope", a, 2), ErrorCode::Schema);
  }

  TEST_CASE("a half-plane is not pointed") {
    const ParameterSet a{"a"};
    const Cone half("half", Cone::Kind::Custom, a, 2,
                    [](const SoftVector& x) { return x(0, 0) >= 0.0; },
                    [](const SoftVector& x) { return x(0, 0) > 0.0; });
    const auto r = cone_property_check(half, ConeProperty::Pointed, 2000, 5);
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.counterexample.empty());
  }

  TEST_CASE("trials must be positive") {
    CHECK_ERROR_CODE(cone_property_check(orthant_cone(ParameterSet{"a"}, 1), ConeProperty::Solid, 0, 1),
                     ErrorCode::InvalidArgument);
  }

  TEST_CASE("monotone bounded sequences converge") {
    const ParameterSet a{"a"};
    const Cone P = orthant_cone(a, 1);
    std::vector<SoftVector> up;
    for (int n = 1; n <= 80; ++n) up.push_back(vec(a, {{1.0 - std::ldexp(1.0, -n)}}));
    CHECK(monotone_sequence_converges(P, up, 1e-9));
    std::vector<SoftVector> growing;
    for (int n = 1; n <= 80; ++n) growing.push_back(vec(a, {{double(n)}}));
    CHECK_FALSE(monotone_sequence_converges(P, growing, 1e-9));
  }
}
