#pragma once

#include <functional>
#include <limits>
#include <string>

#include "bk/types.hpp"

namespace bk {

/// A Kahler metric in coordinates: z in C^q -> positive-definite Hermitian
/// coefficient matrix G(z), ds^2 = G_{ij}(z) dz_i dzbar_j. Immutable after
/// construction; evaluation is pure.
struct MetricField {
  int q = 0;
  std::string name;
  std::function<CMat(const CVec&)> eval;
  /// Distance from z to the domain boundary in the max |dz_i| sense;
  /// +infinity for globally defined fields.
  std::function<double(const CVec&)> margin = [](const CVec&) {
    return std::numeric_limits<double>::infinity();
  };

  CMat operator()(const CVec& z) const { return eval(z); }
  bool contains(const CVec& z) const { return margin(z) > 0.0; }
};

/// The flat metric on C^q.
MetricField flat_metric(int q);

}  // namespace bk
