#include "nadyn/reduction.hpp"

namespace nadyn {

namespace {

std::string xy_power(const char* var, int k) {
  if (k == 0) return "";
  if (k == 1) return var;
  return std::string(var) + "^" + std::to_string(k);
}

}  // namespace

std::string ReductionResult::H_str() const {
  const int dh = h.degree();
  std::string out;
  for (int i = dh; i >= 0; --i) {
    if (h[i].is_zero()) continue;
    std::string mono = xy_power("X", i);
    const std::string y = xy_power("Y", dh - i + infinity_power);
    if (!y.empty()) mono = mono.empty() ? y : mono + "*" + y;
    std::string cs = h[i].str();
    const bool single = cs.find(" + ") == std::string::npos && cs.find(" - ") == std::string::npos;
    std::string term;
    if (mono.empty())
      term = cs;
    else if (cs == "1")
      term = mono;
    else if (cs == "-1")
      term = "-" + mono;
    else
      term = (single ? cs : "(" + cs + ")") + "*" + mono;
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out.empty() ? "1" : out;
}

std::vector<std::pair<ResiduePoint, int>> ReductionResult::exceptional_points() const {
  std::vector<std::pair<ResiduePoint, int>> out;
  if (h.degree() > 0)
    for (const auto& [r, m] : find_roots(h).roots) out.emplace_back(ResiduePoint::affine(r), m);
  if (infinity_power > 0) out.emplace_back(ResiduePoint::infinity(), infinity_power);
  return out;
}

std::vector<int> ReductionResult::unresolved_degrees() const {
  if (h.degree() <= 0) return {};
  return find_roots(h).unresolved_degrees;
}

std::vector<std::string> ReductionResult::exceptional_set() const {
  std::vector<std::string> out;
  for (const auto& [pt, m] : exceptional_points()) out.push_back(pt.str());
  for (int k : unresolved_degrees()) out.push_back("unresolved(" + std::to_string(k) + ")");
  return out;
}

ReductionResult reduce_map(const SeriesMap& f) {
  auto [n, d] = normalize_pair(f.num(), f.den());
  auto res = [](const Series& c) { return c.residue(); };
  const GroundField F = f.field();
  BasePoly pr = n.map(res), qr = d.map(res);
  auto coerce = [F](const BaseElem& c) { return c.in_field(F); };
  pr = pr.map(coerce);
  qr = qr.map(coerce);
  ReductionResult r;
  r.degree = f.degree();
  r.infinity_power = r.degree - std::max(pr.degree(), qr.degree());
  r.h = gcd(pr, qr);
  r.g_hat = make_residue_map(F, pr, qr);
  r.good = r.h_degree() == 0;
  return r;
}

bool has_good_reduction(const SeriesMap& f) { return reduce_map(f).good; }

ResiduePoint residue_point(const SeriesPoint& z) {
  if (z.is_infinity()) return ResiduePoint::infinity();
  if (!(z.y() == Series(1))) {
    // [1 : y] with val(y) > 0 reduces to infinity.
    if (z.y().valuation() > Valuation(Q(0))) return ResiduePoint::infinity();
    throw std::logic_error("non-canonical series point");
  }
  if (z.x().valuation() < Valuation(Q(0))) return ResiduePoint::infinity();
  return ResiduePoint::affine(z.x().residue());
}

ResiduePoint pointwise_limit_at(const SeriesMap& f, const ResiduePoint& z, const PrecisionContext& ctx) {
  const SeriesPoint lifted(Series(z.x()), Series(z.y()));
  return residue_point(evaluate(f, lifted, ctx));
}

}  // namespace nadyn
