#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nadyn/berkovich.hpp"
#include "nadyn/ratmap.hpp"

namespace nadyn {

/// f = separable_part o z^(p^frobenius_exponent).
template <class C>
struct SeparableDecomposition {
  RationalMap<C> separable_part;
  int frobenius_exponent = 0;
};

namespace detail {

template <class C>
bool in_frobenius_image(const Poly<C>& p, std::uint32_t q) {
  for (int i = 0; i <= p.degree(); ++i)
    if (i % static_cast<int>(q) != 0 && !level_exact_zero(p[i])) return false;
  return true;
}

template <class C>
Poly<C> compress_exponents(const Poly<C>& p, std::uint32_t q) {
  if (p.is_zero()) return p;
  std::vector<C> c(static_cast<std::size_t>(p.degree()) / q + 1);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p[static_cast<int>(i * q)];
  return Poly<C>(std::move(c));
}

}  // namespace detail

/// For lowest-terms P/Q the wronskian vanishes identically exactly when both P
/// and Q are polynomials in z^p, so the loop peels one Frobenius at a time.
template <class C>
SeparableDecomposition<C> separable_decomposition(const RationalMap<C>& f) {
  if (f.is_constant()) throw std::invalid_argument("separable decomposition of a constant map");
  SeparableDecomposition<C> out{f, 0};
  const std::uint32_t p = f.field().characteristic();
  if (p == 0) return out;
  while (detail::in_frobenius_image(out.separable_part.num(), p) &&
         detail::in_frobenius_image(out.separable_part.den(), p)) {
    out.separable_part = RationalMap<C>::trusted(f.field(), detail::compress_exponents(out.separable_part.num(), p),
                                                 detail::compress_exponents(out.separable_part.den(), p));
    ++out.frobenius_exponent;
  }
  return out;
}

/// Degree of the separable part.
template <class C>
int nontrivial_degree(const RationalMap<C>& f) {
  return separable_decomposition(f).separable_part.degree();
}

enum class Tameness { Tame, Unknown };
std::string to_string(Tameness t);

/// Tame in characteristic zero or when p exceeds the nontrivial degree.
template <class C>
Tameness tameness_certificate(const RationalMap<C>& f) {
  const std::uint32_t p = f.field().characteristic();
  if (p == 0) return Tameness::Tame;
  return static_cast<int>(p) > nontrivial_degree(f) ? Tameness::Tame : Tameness::Unknown;
}

/// Points of the residue line with the degrees of factors that could not be
/// split into roots.
struct CriticalSet {
  std::vector<ResiduePoint> points;
  std::vector<int> unresolved_degrees;

  [[nodiscard]] bool complete() const { return unresolved_degrees.empty(); }
  /// Point strings followed by "unresolved(k)" markers.
  [[nodiscard]] std::vector<std::string> strs() const;
};

/// Critical points of a separable map: roots of the wronskian, and infinity
/// when the wronskian has degree below 2d - 2.
CriticalSet critical_set(const ResidueMap& g);
/// Preimage of Crit(g1) under z^(p^j), for g = g1 o z^(p^j).
CriticalSet nontrivial_critical_set(const ResidueMap& g);

/// Forward orbit of one starting point.
struct OrbitShape {
  ResiduePoint start;
  bool closed = false;
  int preperiod = 0;
  int period = 0;
  int steps = 0;
  bool height_growth = false;
  bool escape_certified = false;
  /// "cycle", "budget" or "size_cap".
  std::string stop_reason;
};

enum class PcfStatus { PCF, NoCycleWithinBudget };

struct PcfVerdict {
  PcfStatus status = PcfStatus::PCF;
  int budget = 0;
  /// Strictly increasing s-height over the last three steps of some open orbit.
  bool height_growth = false;
  /// Some open orbit provably escapes at the place s = infinity or s = 0.
  bool escape_certified = false;
  /// Critical points that could not be resolved were skipped.
  bool partial = false;
  std::vector<OrbitShape> orbits;

  /// "PCF" or "NoCycleWithinBudget(budget, height_growth=...)".
  [[nodiscard]] std::string str() const;
};

/// Limits on orbit points before iteration stops early.
struct OrbitCaps {
  Q max_height = Q(1024);
  std::size_t max_bits = 1 << 17;
};

/// Iterates the points of the nontrivial critical set; cross-checked against
/// the orbits of the critical values of the separable part, which must agree.
PcfVerdict pcf_at_nontrivial_crit(const ResidueMap& g, int budget, const OrbitCaps& caps = {});
/// The critical-value route on its own (budget counts steps from the
/// critical points, so the values get one step less).
PcfVerdict pcf_via_critical_values(const ResidueMap& g, int budget, const OrbitCaps& caps = {});
/// The critical-point route on its own.
PcfVerdict pcf_via_critical_points(const ResidueMap& g, int budget, const OrbitCaps& caps = {});

/// Reduction of M^-1 o f^q o M, whatever its nontrivial degree. Throws
/// NotPeriodic when the point of M is not q-periodic.
ResidueMap frame_limit(const SeriesMap& f, const MovingFrame& m, int q, const PrecisionContext& ctx = {});
/// frame_limit, rejected with DegenerateLimit unless the nontrivial degree is
/// at least 2.
ResidueMap rescaling_limit(const SeriesMap& f, const MovingFrame& m, int q, const PrecisionContext& ctx = {});
/// Least q' dividing q with f^q'(xi) = xi, or nullopt when xi is not q-periodic.
std::optional<int> minimal_period(const SeriesMap& f, const TypeIIPoint& xi, int q, const PrecisionContext& ctx = {});

bool frames_equivalent(const MovingFrame& m, const MovingFrame& l, const PrecisionContext& ctx = {});

struct DependenceVerdict {
  bool dependent = false;
  int l = 0;
  /// True when f^l carries the first frame's point to the second's.
  bool forward = true;
  /// Reduction of (target frame)^-1 o f^l o (source frame); nonconstant.
  std::optional<ResidueMap> certificate;
  int budget = 0;
  /// An orbit left the working precision before the budget was used up.
  bool search_truncated = false;

  /// "Dependent(l)" or "IndependentWithinBudget(budget)".
  [[nodiscard]] std::string str() const;
};

DependenceVerdict dynamically_dependent(const SeriesMap& f, const MovingFrame& m, const MovingFrame& l, int max_l,
                                        const PrecisionContext& ctx = {});

struct FrameSpec {
  MovingFrame frame;
  int period = 1;
};

struct AuditBudgets {
  int pcf = 50;
  int dependence = 24;
};

struct RescalingEntry {
  std::string frame;
  int period = 1;
  std::optional<int> minimal_period;
  std::optional<TypeIIPoint> point;
  std::optional<ResidueMap> limit;
  int nontrivial_degree = 0;
  /// Nontrivial degree below 2: not a rescaling limit.
  bool degenerate = false;
  std::optional<PcfVerdict> pcf;
  std::optional<Tameness> tameness;
  /// Set when the frame is not periodic or precision ran out.
  std::string error;
  bool precision_exhausted = false;
};

struct BoundAudit {
  int count = 0;
  int limit_2d_minus_2 = 0;
  bool pass = true;
  bool hypothesis_verified = false;
};

struct RescalingReport {
  std::vector<RescalingEntry> rescalings;
  /// Pairwise verdicts; the diagonal is Dependent(0).
  std::vector<std::vector<DependenceVerdict>> dependence_matrix;
  int dependence_budget = 0;
  int nontrivial_degree = 0;
  BoundAudit bound_audit;
  bool good_reduction = false;
  /// Equivalence classes among period-1 rescalings.
  int fixed_classes = 0;
  /// At most one period-1 class when the family has good reduction.
  bool single_fixed_class_pass = true;
  std::vector<std::string> warnings;
};

/// Thrown by audit_independent_count with the full report attached.
class AuditViolation : public BoundViolation {
 public:
  AuditViolation(const std::string& what, RescalingReport report)
      : BoundViolation(what), report_(std::make_shared<RescalingReport>(std::move(report))) {}
  [[nodiscard]] const RescalingReport& report() const { return *report_; }

 private:
  std::shared_ptr<RescalingReport> report_;
};

/// Limit, PCF verdict and tameness for one frame. Failures are recorded in the
/// entry and appended to warnings.
RescalingEntry analyze_frame(const SeriesMap& f, const FrameSpec& fs, int pcf_budget,
                             std::vector<std::string>& warnings, const PrecisionContext& ctx = {});

/// Limits, PCF verdicts and pairwise dependence for the frames, and the
/// count of pairwise independent non-PCF rescalings against 2 deg0(f) - 2.
RescalingReport audit_independent_count(const SeriesMap& f, const std::vector<FrameSpec>& frames,
                                        const AuditBudgets& budgets = {}, const PrecisionContext& ctx = {});

}  // namespace nadyn
