#include "softcone/convergence.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace softcone {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::CauchyOnly: return "cauchy_only";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Diverged: return "diverged";
  }
  return "inconclusive";
}

namespace {

void require_interior(const SoftConeMetric& metric, const SoftVector& c) {
  if (!metric.cone().interior_contains(c)) fail(ErrorCode::CNotInterior, "c must lie in the interior of the cone");
}

double max_of(const SoftReal& r) { return r.max(); }

// Residuals grew over the whole trailing window without ever shrinking.
bool growing_tail(const std::vector<SoftReal>& trail) {
  if (trail.size() < kDivergenceWindow + 1) return false;
  const std::size_t start = trail.size() - kDivergenceWindow - 1;
  for (std::size_t i = start; i + 1 < trail.size(); ++i)
    if (max_of(trail[i + 1]) < max_of(trail[i])) return false;
  return max_of(trail.back()) > max_of(trail[start]);
}

}  // namespace

ConvergenceReport converges_to(std::span<const SoftVector> seq, const SoftVector& limit, const SoftConeMetric& metric,
                               const SoftVector& c, InnerNorm nrm) {
  if (seq.empty()) fail(ErrorCode::EmptySequence, "sequence is empty");
  require_interior(metric, c);
  ConvergenceReport r{Verdict::Inconclusive, c};
  r.residual_trail.reserve(seq.size());
  std::size_t last_fail = 0;  // 1-based; 0 means no failure
  for (std::size_t n = 1; n <= seq.size(); ++n) {
    const SoftVector d = metric(seq[n - 1], limit);
    r.residual_trail.push_back(norm(d, nrm));
    if (!way_below(metric.cone(), d, c)) last_fail = n;
  }
  if (last_fail + 2 <= seq.size()) {
    r.verdict = Verdict::Converged;
    r.index = last_fail;
  } else if (growing_tail(r.residual_trail)) {
    r.verdict = Verdict::Diverged;
  }
  return r;
}

ConvergenceReport is_cauchy(std::span<const SoftVector> seq, const SoftConeMetric& metric, const SoftVector& c,
                            InnerNorm nrm) {
  if (seq.size() < 2) fail(ErrorCode::EmptySequence, "Cauchy check needs at least two terms");
  require_interior(metric, c);
  ConvergenceReport r{Verdict::Inconclusive, c};
  for (std::size_t n = 2; n <= seq.size(); ++n) r.residual_trail.push_back(norm(metric(seq[n - 1], seq[n - 2]), nrm));

  // A failing pair (n, m), n < m, forces N >= n. Scan from the back so the
  // largest such n is found without visiting every pair when the tail is good.
  std::size_t bound = 0;
  for (std::size_t n = seq.size(); n >= 1 && bound == 0; --n)
    for (std::size_t m = n + 1; m <= seq.size(); ++m)
      if (!way_below(metric.cone(), metric(seq[n - 1], seq[m - 1]), c)) {
        bound = n;
        break;
      }
  if (seq.size() - bound >= 2) {
    r.verdict = Verdict::CauchyOnly;
    r.index = bound;
  } else if (growing_tail(r.residual_trail)) {
    r.verdict = Verdict::Diverged;
  }
  return r;
}

std::vector<SoftVector> c_ladder(const SoftVector& c, std::size_t rungs) {
  std::vector<SoftVector> out{c};
  for (std::size_t k = 0; k < rungs; ++k) out.push_back(0.5 * out.back());
  return out;
}

NormEquivalenceReport norm_equivalence_check(std::span<const SoftVector> seq, const SoftVector& limit,
                                             const SoftConeMetric& metric, InnerNorm nrm, double tol,
                                             const SoftVector& c, std::size_t rungs) {
  const auto& alpha = metric.cone().normal_constant();
  if (!alpha) fail(ErrorCode::ConeNotNormal, "norm equivalence needs a cone with a known normal constant");
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (seq.empty()) fail(ErrorCode::EmptySequence, "sequence is empty");
  require_interior(metric, c);

  auto transfer = [&](const SoftVector& ck) { return max_of(*alpha * norm(ck, nrm)); };

  std::vector<SoftVector> ladder = c_ladder(c, rungs);
  while (!(transfer(ladder.back()) < tol)) ladder.push_back(0.5 * ladder.back());

  const std::size_t window = default_cauchy_window(seq.size());
  NormEquivalenceReport r;
  r.rungs = ladder.size();
  r.transferred_bound = transfer(ladder.back());
  r.cone_verdict = std::all_of(ladder.begin(), ladder.end(), [&](const SoftVector& ck) {
    const auto rep = converges_to(seq, limit, metric, ck, nrm);
    return rep.converged() && *rep.index <= seq.size() - window;
  });
  r.norm_verdict = true;
  for (std::size_t n = seq.size() - window; n < seq.size(); ++n)
    if (!(max_label_norm(metric(seq[n], limit), nrm) < tol)) r.norm_verdict = false;
  return r;
}

bool unique_limit_check(std::span<const SoftVector> seq, const SoftVector& x, const SoftVector& y,
                        const SoftConeMetric& metric, const SoftVector& c, double tol, InnerNorm nrm) {
  for (const SoftVector* limit : {&x, &y})
    for (const auto& ck : c_ladder(c))
      if (!converges_to(seq, *limit, metric, ck, nrm).converged())
        fail(ErrorCode::PreconditionFailed, "sequence does not converge to both claimed limits");
  return max_label_norm(metric(x, y), nrm) < tol;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_residual_csv(std::ostream& os, std::span<const SoftVector> residuals) {
  os << "n,label,coordinate,residual_value\n";
  for (std::size_t n = 0; n < residuals.size(); ++n) {
    const SoftVector& r = residuals[n];
    for (std::size_t l = 0; l < r.labels(); ++l)
      for (std::size_t k = 0; k < r.dim(); ++k)
        os << n + 1 << ',' << r.params().label(l) << ',' << k << ',' << format_double(r(l, k)) << '\n';
  }
}

void write_maxnorm_csv(std::ostream& os, std::span<const SoftVector> residuals, InnerNorm nrm) {
  os << "n,residual_maxnorm\n";
  for (std::size_t n = 0; n < residuals.size(); ++n)
    os << n + 1 << ',' << format_double(max_label_norm(residuals[n], nrm)) << '\n';
}

}  // namespace softcone
