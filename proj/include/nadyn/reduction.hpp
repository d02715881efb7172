#pragma once

#include <string>
#include <vector>

#include "nadyn/ratmap.hpp"

namespace nadyn {

/// Reduction of a series-level map of degree d: the residue pair factors as
/// H * (g_hat numerator, g_hat denominator) with H homogeneous of degree
/// d - deg g_hat.
struct ReductionResult {
  int degree = 0;
  /// H(X, Y) = Y^infinity_power * Y^deg(h) * h(X/Y), h monic.
  BasePoly h;
  int infinity_power = 0;
  ResidueMap g_hat;
  bool good = false;

  [[nodiscard]] int h_degree() const { return h.degree() + infinity_power; }
  /// Homogeneous form in X and Y, "1" for good reduction.
  [[nodiscard]] std::string H_str() const;
  /// Zeros of H: resolved points (with multiplicity) and unresolved degrees.
  [[nodiscard]] std::vector<std::pair<ResiduePoint, int>> exceptional_points() const;
  [[nodiscard]] std::vector<int> unresolved_degrees() const;
  /// Points as strings plus "unresolved(k)" markers.
  [[nodiscard]] std::vector<std::string> exceptional_set() const;
};

ReductionResult reduce_map(const SeriesMap& f);
bool has_good_reduction(const SeriesMap& f);

/// Residue of f(z) for a point with coordinates constant in t; the point at
/// infinity stands for a limit that diverges.
ResiduePoint pointwise_limit_at(const SeriesMap& f, const ResiduePoint& z, const PrecisionContext& ctx = {});

/// Residue of a series-level point (infinity when the valuation is negative).
ResiduePoint residue_point(const SeriesPoint& z);

}  // namespace nadyn
