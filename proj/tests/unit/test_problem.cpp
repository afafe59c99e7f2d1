#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "helpers.hpp"
#include "softcone/problem.hpp"

using namespace softcone;
using testutil::real;
using testutil::scalar_vec;
using testutil::vec;

namespace {

const char* kBanach = R"({
  "params": ["a", "b"],
  "metric": {"type": "crisp", "name": "abs"},
  "map": {"type": "scalar_affine", "a": 0.5, "b": 1},
  "spec": {"family": "banach", "t": 0.5},
  "x0": 0,
  "stop": {"norm_tol": 1e-10},
  "seed": 3
})";

Json parse(const char* s) { return Json::parse(s); }

}  // namespace

TEST_SUITE("problem") {
  TEST_CASE("canonical dump sorts keys and prints full precision") {
    Json j = {{"zeta", 1}, {"alpha", {0.1, 2.5}}, {"mid", {{"y", true}, {"x", nullptr}}}};
    CHECK(canonical_dump(j, false) == R"({"alpha":[0.10000000000000001,2.5],"mid":{"x":null,"y":true},"zeta":1})");
    const std::string pretty = canonical_dump(j);
    CHECK(pretty.back() == '\n');
    CHECK(pretty.find("\"alpha\": [0.10000000000000001, 2.5]") != std::string::npos);
    CHECK(pretty.find("\n  \"mid\": {\n    \"x\": null,") != std::string::npos);
    CHECK(canonical_dump(Json(std::numeric_limits<double>::infinity()), false) == "null");
    CHECK(canonical_dump(Json(3.0), false) == "3");
    CHECK(canonical_dump(Json::array(), false) == "[]");
  }

  TEST_CASE("soft real JSON round trip") {
    const ParameterSet p = testutil::ab();
    const SoftReal r = real(p, {0.1, -1e300});
    CHECK(soft_real_from_json(to_json(r), p, "r") == r);
    CHECK(soft_real_from_json(Json(2.5), p, "r") == SoftReal::constant(p, 2.5));
    CHECK_ERROR_CODE(soft_real_from_json(Json("x"), p, "r"), ErrorCode::Schema);
    CHECK_ERROR_CODE(soft_real_from_json(parse(R"({"params":["a"],"values":{"a":1}})"), p, "r"),
                     ErrorCode::MismatchedParameters);
    CHECK_ERROR_CODE(soft_real_from_json(parse(R"({"values":{"a":1}})"), p, "r"), ErrorCode::MissingLabel);
  }

  TEST_CASE("soft vector JSON round trip") {
    const ParameterSet p = testutil::ab();
    const SoftVector x = vec(p, {{1.0 / 3.0, 2}, {-4, 5e-20}});
    CHECK(soft_vector_from_json(to_json(x), p, 2, "x") == x);
    CHECK(soft_vector_from_json(Json(1.5), p, 1, "x") == scalar_vec(p, {1.5, 1.5}));
    CHECK(soft_vector_from_json(parse("[1, 2]"), p, 2, "x") == vec(p, {{1, 2}, {1, 2}}));
    CHECK_ERROR_CODE(soft_vector_from_json(parse("[1, 2]"), p, 3, "x"), ErrorCode::MismatchedDimension);
    CHECK_ERROR_CODE(soft_vector_from_json(Json(1.0), p, 2, "x"), ErrorCode::MismatchedDimension);
  }

  TEST_CASE("load and solve a problem") {
    const Problem p = load_problem_string(kBanach);
    CHECK(p.params.size() == 2);
    CHECK(p.seed == 3);
    CHECK_FALSE(p.max_iter.has_value());
    const SolveResult r = solve_problem(p);
    CHECK(r.contraction == ContractionStatus::Witnessed);
    CHECK(r.certificate.converged);
    CHECK(std::fabs(r.certificate.fixed_element(1, 0) - 2.0) < 1e-9);
  }

  TEST_CASE("certificate JSON has the documented keys") {
    const SolveResult r = solve_problem(load_problem_string(kBanach));
    const Json j = certificate_to_json(r.certificate, r.contraction);
    for (const char* key : {"family", "t", "q", "fixed_element", "iterations", "converged", "uniqueness",
                            "contraction_witnessed", "contraction_status", "final_aposteriori", "first_step",
                            "final_residual", "apriori_bound"})
      CHECK_MESSAGE(j.contains(key), key);
    CHECK_FALSE(j.contains("r"));
    CHECK_FALSE(j.contains("n"));
    CHECK_FALSE(j.contains("iterates_in_ball"));
    CHECK(j["family"] == "banach");
    CHECK(j["uniqueness"] == "unique");
    CHECK(j["contraction_status"] == "witnessed");
    CHECK(j["contraction_witnessed"] == true);
    CHECK(soft_vector_from_json(j["fixed_element"], r.certificate.fixed_element.params(), 1, "x") ==
          r.certificate.fixed_element);
  }

  TEST_CASE("certificate output is deterministic") {
    const auto dump = [] {
      const SolveResult r = solve_problem(load_problem_string(kBanach));
      return canonical_dump(certificate_to_json(r.certificate, r.contraction));
    };
    CHECK(dump() == dump());
  }

  TEST_CASE("schema errors") {
    CHECK_ERROR_CODE(load_problem_string("{"), ErrorCode::Schema);
    CHECK_ERROR_CODE(load_problem_string("[]"), ErrorCode::Schema);
    CHECK_ERROR_CODE(load_problem_string(R"({"metric":{"type":"crisp","name":"abs"}})"), ErrorCode::Schema);
    CHECK_ERROR_CODE(load_problem_string(R"({"params":["a"],"metric":{"type":"nope"}})"), ErrorCode::Schema);
    CHECK_ERROR_CODE(load_problem_string(R"({"params":["a"],"metric":{"type":"crisp","name":"nope"}})"),
                     ErrorCode::Schema);
    CHECK_ERROR_CODE(load_problem_string(R"({"params":["a","a"]})"), ErrorCode::InvalidArgument);
    CHECK_ERROR_CODE(
        load_problem_string(R"({"params":["a"],"metric":{"type":"example","alpha":-1}})"), ErrorCode::NegativeAlpha);
    CHECK_ERROR_CODE(load_problem_file("/nonexistent/problem.json"), ErrorCode::Io);
  }

  TEST_CASE("t out of range is rejected") {
    Json j = parse(kBanach);
    j["spec"]["t"] = 1.0;
    CHECK_ERROR_CODE(solve_problem(load_problem(j)), ErrorCode::OutOfRange);
  }

  TEST_CASE("a problem without a map cannot be solved") {
    Json j = parse(kBanach);
    j.erase("map");
    CHECK_THROWS_AS(solve_problem(load_problem(j)), Error);
  }

  TEST_CASE("problem files load from disk") {
    const auto path = std::filesystem::temp_directory_path() / "softcone_problem_test.json";
    {
      std::ofstream(path) << kBanach;
    }
    const Problem p = load_problem_file(path.string());
    CHECK(p.seed == 3);
    std::filesystem::remove(path);
  }

  TEST_CASE("axiom report formatting") {
    const Problem p = load_problem_string(R"({"params":["a","b"],"metric":{"type":"family","members":{"a":"abs","b":"abs2"}}})");
    const std::string text = format_axiom_reports(check_axioms(require_metric(p), 50, 1));
    CHECK(text.rfind("d1 PASS trials=50 failures=0 worst_violation=0\n", 0) == 0);
    CHECK(text.find("d2 PASS") != std::string::npos);
    CHECK(text.find("d3 PASS") != std::string::npos);
    CHECK(text.find("counterexample") == std::string::npos);

    const Problem broken =
        load_problem_string(R"({"params":["a","b"],"metric":{"type":"registered","name":"positive_part"}})");
    const std::string bad = format_axiom_reports(check_axioms(require_metric(broken), 50, 1));
    CHECK(bad.find("d2 FAIL") != std::string::npos);
    CHECK(bad.find("d2 counterexample: {") != std::string::npos);
  }

  TEST_CASE("slice report") {
    const Problem p = load_problem_string(R"({"params":["a","b"],"metric":{"type":"family","members":{"a":"abs","b":"abs2"}}})");
    const std::string text = slice_problem(p, "b", 1);
    CHECK(text.rfind("label b\n", 0) == 0);
    CHECK(text.find(" FAIL ") == std::string::npos);
    CHECK_ERROR_CODE(slice_problem(p, "z", 1), ErrorCode::MissingLabel);
    const Problem cross =
        load_problem_string(R"({"params":["a","b"],"metric":{"type":"registered","name":"cross_label_max"}})");
    CHECK_THROWS_AS(slice_problem(cross, "a", 1), D4Violation);
  }
}
