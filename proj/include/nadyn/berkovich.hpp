#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nadyn/puiseux.hpp"
#include "nadyn/ratmap.hpp"

namespace nadyn {

enum class Chart { Affine, InfinityChart };

/// The type II point xi_{a,r}: the closed disk of center a and radius
/// eps^radius_val.
///
/// Every type II point is such a disk in the affine coordinate, so points are
/// stored in the affine chart with the center cut below the radius; this
/// makes equality a comparison of representatives.
class TypeIIPoint {
 public:
  /// Throws PrecisionExhausted when the center is not known up to the radius.
  TypeIIPoint(const Series& center, const Q& radius_val);
  TypeIIPoint() : TypeIIPoint(Series(), Q(0)) {}

  static TypeIIPoint gauss() { return {}; }
  /// Converts a disk given in the coordinate w = 1/z.
  static TypeIIPoint from_chart(Chart chart, const Series& center, const Q& radius_val);

  [[nodiscard]] const Series& center() const { return center_; }
  [[nodiscard]] const Q& radius_val() const { return radius_; }
  [[nodiscard]] Chart chart() const { return Chart::Affine; }
  [[nodiscard]] bool is_gauss() const { return center_.is_exact_zero() && radius_.is_zero(); }
  /// Whether the disk contains the type I point a.
  [[nodiscard]] bool contains(const Series& a) const;

  friend bool operator==(const TypeIIPoint&, const TypeIIPoint&) = default;

  /// "(center, radius_val)", e.g. "(t, 2)".
  [[nodiscard]] std::string str() const;

 private:
  Series center_;
  Q radius_;
};

/// A degree-one map over the Puiseux field.
class MovingFrame {
 public:
  /// Throws std::invalid_argument unless m has degree one.
  explicit MovingFrame(SeriesMap m);
  /// a + t^r z.
  static MovingFrame affine(const Series& a, const Q& r, GroundField f = {});

  [[nodiscard]] const SeriesMap& map() const { return m_; }
  [[nodiscard]] std::string str() const { return m_.str(); }

 private:
  SeriesMap m_;
};

/// The image of the Gauss point under the frame.
TypeIIPoint point_of_frame(const MovingFrame& m, const PrecisionContext& ctx = {});
/// center + t^radius_val z.
MovingFrame frame_of_point(const TypeIIPoint& xi, GroundField f = {});

/// f(xi). Throws PrecisionExhausted when the image cannot be separated from
/// a type I point at working precision.
TypeIIPoint image_point(const SeriesMap& f, const TypeIIPoint& xi, const PrecisionContext& ctx = {});

/// Reduction of F_eta^-1 o f o F_xi with F = frame_of_point; nonconstant
/// exactly when eta = f(xi).
ResidueMap frame_reduction(const SeriesMap& f, const TypeIIPoint& xi, const TypeIIPoint& eta,
                           const PrecisionContext& ctx = {});

int local_degree(const SeriesMap& f, const TypeIIPoint& xi, const PrecisionContext& ctx = {});

/// Reduction of L^-1 o M for frames with the same point.
ResidueMap frame_change(const MovingFrame& l, const MovingFrame& m, const PrecisionContext& ctx = {});

/// Reduction of M^-1 o f^q o M for M = frame_of_point(xi), computed along the
/// orbit as a composite of one-step reductions. Throws NotPeriodic.
ResidueMap tangent_map(const SeriesMap& f, const TypeIIPoint& xi, int q, const PrecisionContext& ctx = {});
/// Same map from the explicit iterate f^q; practical for small degrees only.
ResidueMap tangent_map_direct(const SeriesMap& f, const TypeIIPoint& xi, int q, const PrecisionContext& ctx = {});

struct OrbitResult {
  bool periodic = false;
  /// The cycle (periodic) or the points visited (no return within budget).
  std::vector<TypeIIPoint> orbit;
  int period = 0;
  int transient = 0;
};

/// Iterates until a point repeats; equality is at working precision.
OrbitResult find_periodic_orbit(const SeriesMap& f, const TypeIIPoint& seed, int max_period, int max_transient,
                                const PrecisionContext& ctx = {});

}  // namespace nadyn
