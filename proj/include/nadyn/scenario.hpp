#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nadyn/errors.hpp"
#include "nadyn/puiseux.hpp"

namespace nadyn {

/// Malformed scenario document or inconsistent field description.
class ScenarioError : public Error {
 public:
  ScenarioError(const std::string& what, std::size_t line)
      : Error(line ? "scenario line " + std::to_string(line) + ": " + what : "scenario: " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct FrameDecl {
  std::string map;
  int period = 1;
  friend bool operator==(const FrameDecl&, const FrameDecl&) = default;
};

/// One family with the analyses to run on it.
///
/// Expressions are kept as source text so that a scenario survives a round
/// trip through its file form unchanged. The identifier p is bound to the
/// characteristic when parsing.
struct Scenario {
  std::string name;
  /// "Q" (characteristic 0) or "F" (prime characteristic).
  std::string ground = "Q";
  std::uint32_t characteristic = 0;
  bool use_s = true;
  PrecisionContext precision;

  std::string family;
  /// When set the family is family o compose_with.
  std::string compose_with;
  std::vector<FrameDecl> frames;

  int budget_pcf = 20;
  int budget_dependence = 24;
  int budget_orbit = 8;

  /// Any of reduce, orbit, image, rescale, audit, newton, eval, in order.
  std::vector<std::string> analyses;
  std::vector<std::string> eval_points;
  /// Type II points "(center, radius)" for image, and orbit seeds.
  std::vector<std::string> points;
  std::string newton_poly;
  std::string newton_center = "0";
  std::string newton_radius = "0";

  friend bool operator==(const Scenario& a, const Scenario& b);
};

/// Sections [field], [precision], [family], [[frames]], [budgets],
/// [analyses]; every line is `key = value` with a JSON scalar or array as the
/// value, and `#` starts a comment outside strings.
Scenario parse_scenario(const std::string& text);
/// Canonical form: fixed section and key order, empty optional keys omitted.
std::string serialize_scenario(const Scenario& s);

/// Checks analysis names and the ground/characteristic pair.
void validate_scenario(const Scenario& s);

/// Worked examples: three families for p in {2, 3, 5}, the cubic (z^3 + t)/z,
/// and the composition whose reduction is not the composite of reductions.
std::vector<Scenario> builtin_examples();

struct Report {
  nlohmann::ordered_json json;
  /// 0 ok, 1 input error, 2 bound violation, 3 precision exhausted.
  int exit_status = 0;

  /// Indented key/value rendering of the same content as the JSON.
  [[nodiscard]] std::string text() const;
};

/// 2 for BoundViolation, 3 for PrecisionExhausted, 1 for anything else.
int exit_status_for(const std::exception& e);

/// Runs the analyses in order. A failing analysis records its error and the
/// remaining analyses still run; the first failure decides the exit status.
Report run_scenario(const Scenario& s);

/// Parses "(center, radius)" as produced by TypeIIPoint::str.
std::pair<std::string, std::string> split_point(const std::string& src);

}  // namespace nadyn
