#pragma once

// JSON serialization of soft values and certificates, and problem files.
//
// Output JSON is canonical: object keys sorted, two-space indentation,
// floats printed with 17 significant digits.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "softcone/fixed_point.hpp"

namespace softcone {

using Json = nlohmann::json;

std::string canonical_dump(const Json& j, bool pretty = true);

Json to_json(const SoftReal& r);
Json to_json(const SoftVector& x);

/// Accepts a number (constant soft real) or {"params":[...],"values":{...}}.
/// A "params" list, when present, must equal `params`.
SoftReal soft_real_from_json(const Json& j, const ParameterSet& params, const std::string& field);

/// Accepts a number (dim 1 constant), an array (constant tuple) or
/// {"params":[...],"dim":n,"values":{label: number | array}}.
SoftVector soft_vector_from_json(const Json& j, const ParameterSet& params, std::size_t dim, const std::string& field);

Json certificate_to_json(const FixedPointCertificate& cert, ContractionStatus contraction);

struct Problem {
  ParameterSet params;
  std::size_t dim = 1;
  InnerNorm nrm = InnerNorm::Euclidean;
  std::optional<SoftConeMetric> metric;
  std::optional<SelfMap> map;
  std::optional<ContractionSpec> spec;
  std::optional<SoftVector> x0;
  std::optional<StopCriterion> stop;
  std::optional<std::size_t> max_iter;
  std::uint64_t seed = 0;
  std::size_t verify_trials = 1000;
};

/// Throws Schema (or a more specific validation code) on malformed input.
Problem load_problem(const Json& j);
Problem load_problem_string(const std::string& text);
Problem load_problem_file(const std::string& path);

struct SolveResult {
  FixedPointCertificate certificate;
  ContractionStatus contraction = ContractionStatus::Assumed;
};

/// verify_contraction (problem's verify_trials, sampled around x0) then solve.
/// SolveFailure propagates with its partial certificate.
SolveResult solve_problem(const Problem& p);

const SoftConeMetric& require_metric(const Problem& p);

/// One line per axiom report, then counterexamples of failing axioms.
std::string format_axiom_reports(const std::vector<AxiomReport>& reports);

/// Sampled d_label table plus crisp-axiom results for `label`. D4Violation
/// propagates.
std::string slice_problem(const Problem& p, const std::string& label, std::uint64_t seed);

}  // namespace softcone
