#include "softcone/sampling.hpp"

namespace softcone {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

PointSampler uniform_box_sampler(ParameterSet params, std::size_t dim, double lo, double hi) {
  return [params = std::move(params), dim, lo, hi](Rng& rng) {
    std::vector<double> values(params.size() * dim);
    for (double& v : values) v = uniform(rng, lo, hi);
    return SoftVector(params, dim, std::move(values));
  };
}

PointSampler box_around_sampler(SoftVector center, double half_width) {
  return [center = std::move(center), half_width](Rng& rng) {
    std::vector<double> values(center.flat().begin(), center.flat().end());
    for (double& v : values) v += uniform(rng, -half_width, half_width);
    return SoftVector(center.params(), center.dim(), std::move(values));
  };
}

SoftReal random_soft_real(Rng& rng, const ParameterSet& params, double lo, double hi) {
  std::vector<double> values(params.size());
  for (double& v : values) v = uniform(rng, lo, hi);
  return SoftReal(params, std::move(values));
}

}  // namespace softcone
