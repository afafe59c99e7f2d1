#pragma once

#include <doctest.h>

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "softcone/error.hpp"
#include "softcone/soft_space.hpp"

#define CHECK_ERROR_CODE(expr, expected)                   \
  do {                                                      \
    bool thrown_ = false;                                   \
    try {                                                   \
      (void)(expr);                                         \
    } catch (const softcone::Error& e_) {                   \
      thrown_ = true;                                       \
      CHECK(softcone::to_string(e_.code()) == softcone::to_string(expected)); \
    }                                                       \
    CHECK_MESSAGE(thrown_, "expected " << softcone::to_string(expected)); \
  } while (0)

namespace testutil {

inline softcone::ParameterSet ab() { return softcone::ParameterSet{"a", "b"}; }

inline softcone::SoftReal real(const softcone::ParameterSet& p, std::vector<double> v) {
  return softcone::SoftReal(p, std::move(v));
}

/// Soft vector from per-label tuples in label order.
inline softcone::SoftVector vec(const softcone::ParameterSet& p, std::initializer_list<std::vector<double>> tuples) {
  std::vector<double> flat;
  std::size_t dim = 0;
  for (const auto& t : tuples) {
    dim = t.size();
    flat.insert(flat.end(), t.begin(), t.end());
  }
  return softcone::SoftVector(p, dim, std::move(flat));
}

inline softcone::SoftVector scalar_vec(const softcone::ParameterSet& p, std::vector<double> v) {
  return softcone::SoftVector(p, 1, std::move(v));
}

}  // namespace testutil
