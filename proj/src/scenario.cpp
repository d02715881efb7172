#include "nadyn/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "nadyn/berkovich.hpp"
#include "nadyn/parser.hpp"
#include "nadyn/reduction.hpp"
#include "nadyn/rescaling.hpp"

namespace nadyn {

namespace {

using json = nlohmann::ordered_json;

const std::vector<std::string> kAnalyses = {"reduce", "orbit", "image", "rescale", "audit", "newton", "eval"};
const std::vector<std::string> kSections = {"field", "precision", "family", "budgets", "analyses"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string && c == '\\') {
      ++i;
    } else if (c == '"') {
      in_string = !in_string;
    } else if (c == '#' && !in_string) {
      return line.substr(0, i);
    }
  }
  return line;
}

// Reads one value and writes it into the scenario.
class Assigner {
 public:
  Assigner(Scenario& s, std::size_t line) : s_(s), line_(line) {}

  void assign(const std::string& section, const std::string& key, const json& v) {
    if (section == "field") {
      if (key == "ground") return void(s_.ground = str(v));
      if (key == "char") return void(s_.characteristic = static_cast<std::uint32_t>(integer(v, 0)));
      if (key == "s") return void(s_.use_s = boolean(v));
    } else if (section == "precision") {
      if (key == "t_order") {
        if (v.is_string()) return void(s_.precision.t_order = parse_rational(v.get<std::string>()));
        return void(s_.precision.t_order = Q(integer(v, 1)));
      }
      if (key == "max_denominator") return void(s_.precision.max_denominator = static_cast<int>(integer(v, 1)));
    } else if (section == "family") {
      if (key == "name") return void(s_.name = str(v));
      if (key == "map") return void(s_.family = str(v));
      if (key == "compose_with") return void(s_.compose_with = str(v));
    } else if (section == "frames") {
      if (key == "map") return void(s_.frames.back().map = str(v));
      if (key == "period") return void(s_.frames.back().period = static_cast<int>(integer(v, 1)));
    } else if (section == "budgets") {
      if (key == "pcf") return void(s_.budget_pcf = static_cast<int>(integer(v, 0)));
      if (key == "dependence") return void(s_.budget_dependence = static_cast<int>(integer(v, 0)));
      if (key == "orbit") return void(s_.budget_orbit = static_cast<int>(integer(v, 1)));
    } else if (section == "analyses") {
      if (key == "run") return void(s_.analyses = strings(v));
      if (key == "eval_points") return void(s_.eval_points = strings(v));
      if (key == "points") return void(s_.points = strings(v));
      if (key == "newton_poly") return void(s_.newton_poly = str(v));
      if (key == "newton_center") return void(s_.newton_center = str(v));
      if (key == "newton_radius") return void(s_.newton_radius = str(v));
    }
    throw ScenarioError("unknown key '" + key + "' in section [" + section + "]", line_);
  }

 private:
  std::string str(const json& v) const {
    if (!v.is_string()) throw ScenarioError("expected a string", line_);
    return v.get<std::string>();
  }
  long long integer(const json& v, long long min) const {
    if (!v.is_number_integer()) throw ScenarioError("expected an integer", line_);
    const auto n = v.get<long long>();
    if (n < min) throw ScenarioError("value " + std::to_string(n) + " below " + std::to_string(min), line_);
    return n;
  }
  bool boolean(const json& v) const {
    if (!v.is_boolean()) throw ScenarioError("expected true or false", line_);
    return v.get<bool>();
  }
  std::vector<std::string> strings(const json& v) const {
    if (!v.is_array()) throw ScenarioError("expected an array of strings", line_);
    std::vector<std::string> out;
    for (const json& x : v) out.push_back(str(x));
    return out;
  }

  Scenario& s_;
  std::size_t line_;
};

std::string quoted(const std::string& s) { return json(s).dump(); }

std::string string_array(const std::vector<std::string>& v) { return json(v).dump(); }

GroundField field_of(const Scenario& s) {
  return s.characteristic == 0 ? GroundField::rationals() : GroundField::prime(s.characteristic);
}

bool mentions_s(const std::string& src) {
  for (std::size_t i = 0; i < src.size();) {
    if (std::isalpha(static_cast<unsigned char>(src[i])) || src[i] == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      if (src.compare(i, j - i, "s") == 0) return true;
      i = j;
    } else {
      ++i;
    }
  }
  return false;
}

struct Context {
  const Scenario& s;
  ParseContext pc;
  SeriesMap f;
  std::optional<SeriesMap> outer, inner;
  std::vector<std::string> warnings;
  json& out;
  int status = 0;

  void fail(int code) {
    if (status == 0) status = code;
  }
};

Series series_of(const std::string& src, const Context& c) { return parse_series(src, c.pc); }

TypeIIPoint point_of(const std::string& src, const Context& c) {
  const auto [center, radius] = split_point(src);
  return {series_of(center, c), parse_rational(radius)};
}

std::vector<FrameSpec> frame_specs(const Context& c) {
  std::vector<FrameSpec> out;
  for (const FrameDecl& d : c.s.frames) out.push_back({MovingFrame(parse_map(d.map, c.pc)), d.period});
  return out;
}

json strings_of(const std::vector<std::string>& v) { return json(v); }

json entry_json(const RescalingEntry& e) {
  json j;
  j["frame"] = e.frame;
  j["period"] = e.period;
  j["limit"] = e.limit ? json(e.limit->str()) : json(nullptr);
  j["nontrivial_degree"] = e.nontrivial_degree;
  j["pcf"] = e.pcf ? json(e.pcf->str()) : json(nullptr);
  j["tameness"] = e.tameness ? json(to_string(*e.tameness)) : json(nullptr);
  j["point"] = e.point ? json(e.point->str()) : json(nullptr);
  j["minimal_period"] = e.minimal_period ? json(*e.minimal_period) : json(nullptr);
  j["degenerate"] = e.degenerate;
  if (!e.error.empty()) j["error"] = e.error;
  return j;
}

void record_entries(Context& c, const std::vector<RescalingEntry>& entries) {
  json arr = json::array();
  for (const RescalingEntry& e : entries) {
    arr.push_back(entry_json(e));
    if (!e.error.empty()) c.fail(e.precision_exhausted ? 3 : 1);
  }
  c.out["rescalings"] = arr;
}

void record_audit(Context& c, const RescalingReport& rep) {
  record_entries(c, rep.rescalings);
  json m = json::array();
  for (const auto& row : rep.dependence_matrix) {
    json r = json::array();
    for (const DependenceVerdict& v : row) r.push_back(v.str());
    m.push_back(r);
  }
  c.out["dependence_matrix"] = m;
  c.out["bound_audit"] = {{"count", rep.bound_audit.count},
                          {"limit_2d_minus_2", rep.bound_audit.limit_2d_minus_2},
                          {"pass", rep.bound_audit.pass},
                          {"hypothesis_verified", rep.bound_audit.hypothesis_verified}};
  c.out["fixed_classes"] = {{"count", rep.fixed_classes},
                            {"good_reduction", rep.good_reduction},
                            {"pass", rep.single_fixed_class_pass}};
  c.warnings.insert(c.warnings.end(), rep.warnings.begin(), rep.warnings.end());
}

void run_reduce(Context& c) {
  const ReductionResult r = reduce_map(c.f);
  json j;
  j["good"] = r.good;
  j["H"] = r.H_str();
  j["g_hat"] = r.g_hat.str();
  j["exceptional_set"] = strings_of(r.exceptional_set());
  for (int k : r.unresolved_degrees())
    c.warnings.push_back("exceptional set has an unresolved factor of degree " + std::to_string(k));
  if (c.outer) {
    const ReductionResult ro = reduce_map(*c.outer), ri = reduce_map(*c.inner);
    j["factors"] = json::array({json{{"map", c.outer->str()}, {"good", ro.good}, {"g_hat", ro.g_hat.str()}},
                                json{{"map", c.inner->str()}, {"good", ri.good}, {"g_hat", ri.g_hat.str()}}});
    j["composite_of_reductions"] = compose(ro.g_hat, ri.g_hat).str();
  }
  c.out["reduction"] = j;
}

void run_orbit(Context& c) {
  std::vector<TypeIIPoint> seeds;
  for (const std::string& p : c.s.points) seeds.push_back(point_of(p, c));
  if (seeds.empty())
    for (const FrameSpec& fs : frame_specs(c)) seeds.push_back(point_of_frame(fs.frame, c.pc.precision));
  if (seeds.empty()) seeds.push_back(TypeIIPoint::gauss());
  json arr = json::array();
  for (const TypeIIPoint& seed : seeds) {
    const OrbitResult o = find_periodic_orbit(c.f, seed, c.s.budget_orbit, c.s.budget_orbit, c.pc.precision);
    json pts = json::array();
    for (const TypeIIPoint& x : o.orbit) pts.push_back(x.str());
    arr.push_back({{"seed", seed.str()},
                   {"periodic", o.periodic},
                   {"period", o.period},
                   {"transient", o.transient},
                   {"orbit", pts}});
    if (!o.periodic) c.warnings.push_back("orbit of " + seed.str() + " has no cycle within budget");
  }
  c.out["orbits"] = arr;
}

void run_image(Context& c) {
  if (c.s.points.empty()) throw ScenarioError("image needs at least one point", 0);
  json arr = json::array();
  for (const std::string& p : c.s.points) {
    const TypeIIPoint xi = point_of(p, c);
    arr.push_back({{"point", xi.str()},
                   {"image", image_point(c.f, xi, c.pc.precision).str()},
                   {"local_degree", local_degree(c.f, xi, c.pc.precision)}});
  }
  c.out["image"] = arr;
}

void run_rescale(Context& c) {
  if (c.s.frames.empty()) throw ScenarioError("rescale needs at least one frame", 0);
  std::vector<RescalingEntry> entries;
  for (const FrameSpec& fs : frame_specs(c))
    entries.push_back(analyze_frame(c.f, fs, c.s.budget_pcf, c.warnings, c.pc.precision));
  record_entries(c, entries);
}

void run_audit(Context& c) {
  if (c.s.frames.empty()) throw ScenarioError("audit needs at least one frame", 0);
  const AuditBudgets budgets{c.s.budget_pcf, c.s.budget_dependence};
  try {
    record_audit(c, audit_independent_count(c.f, frame_specs(c), budgets, c.pc.precision));
  } catch (const AuditViolation& v) {
    record_audit(c, v.report());
    throw;
  }
}

void run_newton(Context& c) {
  if (c.s.newton_poly.empty()) throw ScenarioError("newton needs newton_poly", 0);
  const ParsedFraction pf = parse_fraction(c.s.newton_poly, c.pc);
  if (pf.den.degree() != 0) throw ScenarioError("newton_poly must be a polynomial in z", 0);
  const Series den = pf.den[0];
  const SeriesPoly poly = pf.num.map([&](const Series& x) { return divide(x, den, c.pc.precision); });
  const std::vector<NewtonSegment> segs = newton_polygon(poly);
  json js = json::array();
  for (const NewtonSegment& sg : segs) js.push_back({{"root_valuation", sg.root_valuation.str()}, {"length", sg.length}});
  json vals = json::array();
  for (const Valuation& v : root_valuations(segs)) vals.push_back(v.str());
  const Series center = series_of(c.s.newton_center, c);
  const Q radius = parse_rational(c.s.newton_radius);
  c.out["newton"] = {{"poly", poly_str(poly)},
                     {"segments", js},
                     {"root_valuations", vals},
                     {"disk", TypeIIPoint(center, radius).str()},
                     {"zeros_in_disk", count_zeros_in_disk(poly, center, radius)}};
}

void run_eval(Context& c) {
  json arr = json::array();
  for (const std::string& p : c.s.eval_points) {
    const SeriesPoint z = parse_point(p, c.pc);
    const SeriesPoint value = evaluate(c.f, z, c.pc.precision);
    std::string limit;
    try {
      limit = pointwise_limit_at(c.f, parse_residue_point(p, c.pc), c.pc.precision).str();
    } catch (const SyntaxError&) {
      limit = residue_point(value).str();
    }
    arr.push_back({{"point", z.str()}, {"value", value.str()}, {"limit", limit}});
  }
  c.out["eval"] = arr;
}

void render(std::ostringstream& os, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (x.is_structured() && !x.empty()) {
        os << pad << k << ":\n";
        render(os, x, indent + 2);
      } else {
        os << pad << k << ": " << (x.is_structured() ? x.dump() : scalar(x)) << "\n";
      }
    }
  } else if (v.is_array()) {
    for (const json& x : v) {
      if (x.is_structured() && !x.empty()) {
        os << pad << "-\n";
        render(os, x, indent + 2);
      } else {
        os << pad << "- " << (x.is_structured() ? x.dump() : scalar(x)) << "\n";
      }
    }
  }
}

}  // namespace

bool operator==(const Scenario& a, const Scenario& b) {
  return serialize_scenario(a) == serialize_scenario(b);
}

std::pair<std::string, std::string> split_point(const std::string& src) {
  const std::string s = trim(src);
  const auto comma = s.rfind(',');
  if (s.size() < 2 || s.front() != '(' || s.back() != ')' || comma == std::string::npos)
    throw SyntaxError("expected '(center, radius)' in '" + src + "'", 1);
  return {trim(s.substr(1, comma - 1)), trim(s.substr(comma + 1, s.size() - comma - 2))};
}

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string raw, section;
  std::set<std::string> seen_sections, seen_keys;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line == "[[frames]]") {
      section = "frames";
      s.frames.emplace_back();
      seen_keys.clear();
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ScenarioError("unterminated section header", lineno);
      section = trim(line.substr(1, line.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), section) == kSections.end())
        throw ScenarioError("unknown section [" + section + "]", lineno);
      if (!seen_sections.insert(section).second) throw ScenarioError("repeated section [" + section + "]", lineno);
      seen_keys.clear();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ScenarioError("expected 'key = value'", lineno);
    if (section.empty()) throw ScenarioError("key outside any section", lineno);
    const std::string key = trim(line.substr(0, eq));
    if (!seen_keys.insert(key).second) throw ScenarioError("repeated key '" + key + "'", lineno);
    json value;
    try {
      value = json::parse(trim(line.substr(eq + 1)));
    } catch (const json::parse_error&) {
      throw ScenarioError("value of '" + key + "' is not a string, integer, boolean or array", lineno);
    }
    Assigner(s, lineno).assign(section, key, value);
  }
  validate_scenario(s);
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream os;
  os << "[field]\n"
     << "ground = " << quoted(s.ground) << "\n"
     << "char = " << s.characteristic << "\n"
     << "s = " << (s.use_s ? "true" : "false") << "\n\n";
  os << "[precision]\n";
  if (s.precision.t_order.is_integer())
    os << "t_order = " << s.precision.t_order.str() << "\n";
  else
    os << "t_order = " << quoted(s.precision.t_order.str()) << "\n";
  os << "max_denominator = " << s.precision.max_denominator << "\n\n";
  os << "[family]\n"
     << "name = " << quoted(s.name) << "\n"
     << "map = " << quoted(s.family) << "\n";
  if (!s.compose_with.empty()) os << "compose_with = " << quoted(s.compose_with) << "\n";
  for (const FrameDecl& f : s.frames)
    os << "\n[[frames]]\n"
       << "map = " << quoted(f.map) << "\n"
       << "period = " << f.period << "\n";
  os << "\n[budgets]\n"
     << "pcf = " << s.budget_pcf << "\n"
     << "dependence = " << s.budget_dependence << "\n"
     << "orbit = " << s.budget_orbit << "\n\n";
  os << "[analyses]\n"
     << "run = " << string_array(s.analyses) << "\n";
  if (!s.eval_points.empty()) os << "eval_points = " << string_array(s.eval_points) << "\n";
  if (!s.points.empty()) os << "points = " << string_array(s.points) << "\n";
  if (!s.newton_poly.empty())
    os << "newton_poly = " << quoted(s.newton_poly) << "\n"
       << "newton_center = " << quoted(s.newton_center) << "\n"
       << "newton_radius = " << quoted(s.newton_radius) << "\n";
  return os.str();
}

void validate_scenario(const Scenario& s) {
  if (s.ground == "Q") {
    if (s.characteristic != 0) throw ScenarioError("ground Q needs char = 0", 0);
  } else if (s.ground == "F") {
    if (!is_prime(s.characteristic)) throw ScenarioError("ground F needs a prime char", 0);
  } else {
    throw ScenarioError("ground must be \"Q\" or \"F\"", 0);
  }
  if (s.precision.t_order <= Q(0)) throw ScenarioError("t_order must be positive", 0);
  if (s.precision.max_denominator < 1) throw ScenarioError("max_denominator must be positive", 0);
  if (s.budget_orbit < 1 || s.budget_pcf < 0 || s.budget_dependence < 0)
    throw ScenarioError("budgets must be non-negative and orbit positive", 0);
  for (const FrameDecl& f : s.frames)
    if (f.period < 1) throw ScenarioError("frame period must be positive", 0);
  for (const std::string& a : s.analyses)
    if (std::find(kAnalyses.begin(), kAnalyses.end(), a) == kAnalyses.end())
      throw ScenarioError("unknown analysis '" + a + "'", 0);
  if (!s.use_s) {
    std::vector<std::string> exprs{s.family, s.compose_with, s.newton_poly, s.newton_center};
    for (const FrameDecl& f : s.frames) exprs.push_back(f.map);
    exprs.insert(exprs.end(), s.eval_points.begin(), s.eval_points.end());
    exprs.insert(exprs.end(), s.points.begin(), s.points.end());
    for (const std::string& e : exprs)
      if (mentions_s(e)) throw ScenarioError("'" + e + "' uses s but the field has s = false", 0);
  }
}

int exit_status_for(const std::exception& e) {
  if (dynamic_cast<const BoundViolation*>(&e)) return 2;
  if (dynamic_cast<const PrecisionExhausted*>(&e)) return 3;
  return 1;
}

std::string Report::text() const {
  std::ostringstream os;
  render(os, json, 0);
  return os.str();
}

Report run_scenario(const Scenario& s) {
  Report r;
  r.json["scenario"] = s.name;
  if (s.analyses.empty()) {
    r.json["warnings"] = json::array();
    r.json["exit_status"] = 0;
    return r;
  }
  json errors = json::array();
  std::vector<std::string> warnings;
  std::optional<Context> c;
  try {
    validate_scenario(s);
    ParseContext pc(field_of(s), s.precision);
    SeriesMap f = parse_map(s.family, pc);
    std::optional<SeriesMap> outer, inner;
    if (!s.compose_with.empty()) {
      outer = f;
      inner = parse_map(s.compose_with, pc);
      f = compose(*outer, *inner, s.precision);
    }
    c.emplace(Context{s, pc, f, outer, inner, {}, r.json, 0});
  } catch (const std::exception& e) {
    errors.push_back({{"analysis", "input"}, {"message", e.what()}});
    r.json["errors"] = errors;
    r.json["warnings"] = json::array();
    r.json["exit_status"] = r.exit_status = 1;
    return r;
  }

  const std::map<std::string, std::function<void(Context&)>> dispatch = {
      {"reduce", run_reduce}, {"orbit", run_orbit},   {"image", run_image}, {"rescale", run_rescale},
      {"audit", run_audit},   {"newton", run_newton}, {"eval", run_eval}};
  for (const std::string& a : s.analyses) {
    try {
      dispatch.at(a)(*c);
    } catch (const std::exception& e) {
      c->fail(exit_status_for(e));
      errors.push_back({{"analysis", a}, {"message", e.what()}});
    }
  }
  if (!errors.empty()) r.json["errors"] = errors;
  std::vector<std::string> unique;
  for (const std::string& w : c->warnings)
    if (std::find(unique.begin(), unique.end(), w) == unique.end()) unique.push_back(w);
  r.json["warnings"] = unique;
  r.exit_status = c->status;
  r.json["exit_status"] = r.exit_status;
  return r;
}

std::vector<Scenario> builtin_examples() {
  std::vector<Scenario> out;
  auto prime_scenario = [](const std::string& name, std::uint32_t p, std::string family) {
    Scenario s;
    s.name = name + "-p" + std::to_string(p);
    s.ground = "F";
    s.characteristic = p;
    s.family = std::move(family);
    s.analyses = {"reduce", "orbit", "rescale", "audit"};
    return s;
  };
  for (std::uint32_t p : {2u, 3u, 5u}) {
    Scenario s = prime_scenario("example1", p, "(z^p - (s + t))*(z^p - s)");
    s.frames = {{"z", 1}};
    out.push_back(std::move(s));
  }
  for (std::uint32_t p : {2u, 3u, 5u}) {
    // b = 2 vanishes in characteristic 2, where s serves as b instead.
    const std::string b = p == 2 ? "s" : "2";
    Scenario s = prime_scenario("example2", p,
                                "(t^(3*p^2 + 1)*z^(6*p) + 1)/(t^(3*p^2 + 1)*z^(6*p) + z^p*(z^p - 1)*(z^p - " + b +
                                    "))");
    s.frames = {{"z", 1}, {"t*z", 2}};
    out.push_back(std::move(s));
  }
  for (std::uint32_t p : {2u, 3u, 5u}) {
    Scenario s = prime_scenario("example3", p, "z^(2*p) + t^(1 + 2*p^2)/z^p");
    s.frames = {{"z", 1}, {"t*z", 2}};
    out.push_back(std::move(s));
  }
  Scenario intro;
  intro.name = "intro-cubic";
  intro.family = "(z^3 + t)/z";
  intro.analyses = {"reduce", "eval", "orbit", "newton"};
  intro.eval_points = {"1", "-2", "1/3", "0", "inf", "t"};
  intro.newton_poly = "z^3 + t";
  intro.newton_radius = "1/3";
  out.push_back(std::move(intro));
  Scenario comp;
  comp.name = "composition-counterexample";
  comp.family = "z^2/t^2";
  comp.compose_with = "t*z^2";
  comp.analyses = {"reduce"};
  out.push_back(std::move(comp));
  return out;
}

}  // namespace nadyn
