// Command-line front end: every subcommand builds a scenario and runs it.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nadyn/berkovich.hpp"
#include "nadyn/parser.hpp"
#include "nadyn/scenario.hpp"

namespace {

struct Globals {
  long precision = 64;
  int max_denom = 64;
  std::uint32_t characteristic = 0;
  int budget_pcf = 20;
  int budget_dep = 24;
  std::string format = "text";
  CLI::Option* precision_opt = nullptr;
  CLI::Option* max_denom_opt = nullptr;
  CLI::Option* char_opt = nullptr;
  CLI::Option* pcf_opt = nullptr;
  CLI::Option* dep_opt = nullptr;

  // Explicit flags override whatever the scenario says.
  void apply(nadyn::Scenario& s) const {
    if (precision_opt->count()) s.precision.t_order = nadyn::Q(precision);
    if (max_denom_opt->count()) s.precision.max_denominator = max_denom;
    if (char_opt->count()) {
      s.characteristic = characteristic;
      s.ground = characteristic == 0 ? "Q" : "F";
    }
    if (pcf_opt->count()) s.budget_pcf = budget_pcf;
    if (dep_opt->count()) s.budget_dependence = budget_dep;
  }
};

void print(const nadyn::Report& r, const std::string& format) {
  if (format == "json")
    std::cout << r.json.dump(2) << "\n";
  else
    std::cout << r.text();
}

std::vector<nadyn::FrameDecl> frames_of(const std::vector<std::string>& maps, const std::vector<int>& periods) {
  if (!periods.empty() && periods.size() != maps.size())
    throw nadyn::ScenarioError("give one --period per --frame or none", 0);
  std::vector<nadyn::FrameDecl> out;
  for (std::size_t i = 0; i < maps.size(); ++i) out.push_back({maps[i], periods.empty() ? 1 : periods[i]});
  return out;
}

// Points entered in the chart at infinity are rewritten in the affine chart.
std::string affine_point(const std::string& src, const std::string& chart, const nadyn::Scenario& s) {
  if (chart == "affine") return src;
  const auto [center, radius] = nadyn::split_point(src);
  const nadyn::GroundField f =
      s.characteristic == 0 ? nadyn::GroundField::rationals() : nadyn::GroundField::prime(s.characteristic);
  const nadyn::ParseContext pc(f, s.precision);
  return nadyn::TypeIIPoint::from_chart(nadyn::Chart::InfinityChart, nadyn::parse_series(center, pc),
                                       nadyn::parse_rational(radius))
      .str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rescaling limits and reduction of degenerating rational maps over Puiseux series", "nadyn"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  g.precision_opt = app.add_option("--precision", g.precision, "t-adic working precision (t_order)")->check(
      CLI::PositiveNumber);
  g.max_denom_opt = app.add_option("--max-denom", g.max_denom, "Largest exponent denominator")->check(
      CLI::PositiveNumber);
  g.char_opt = app.add_option("--char", g.characteristic, "Characteristic: 0 or a prime");
  g.pcf_opt = app.add_option("--budget-pcf", g.budget_pcf, "Orbit steps for PCF detection")->check(
      CLI::NonNegativeNumber);
  g.dep_opt = app.add_option("--budget-dep", g.budget_dep, "Iterates searched for dynamical dependence")->check(
      CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::string map, poly, file, chart = "affine", center = "0", radius = "0", name, dump_dir;
  std::vector<std::string> points, frames, seeds;
  std::vector<int> periods;
  int budget_orbit = 8;
  bool list = false;

  auto* eval = app.add_subcommand("eval", "Evaluate a map at points and report the limits as t -> 0");
  eval->add_option("map", map, "Rational map in z, t, s")->required();
  eval->add_option("points", points, "Points: expressions or inf")->required();

  auto* reduce = app.add_subcommand("reduce", "Reduction: g_hat, H and the exceptional set");
  reduce->add_option("map", map)->required();

  auto* orbit = app.add_subcommand("orbit", "Orbits of type II points");
  orbit->add_option("map", map)->required();
  orbit->add_option("--seed", seeds, "Starting point \"(center, radius)\"");
  orbit->add_option("--frame", frames, "Moving frame whose point starts an orbit");
  orbit->add_option("--budget-orbit", budget_orbit, "Largest period and transient searched")->check(
      CLI::PositiveNumber);

  auto* image = app.add_subcommand("image", "Image of type II points");
  image->add_option("map", map)->required();
  image->add_option("points", points, "Points \"(center, radius)\"")->required();
  image->add_option("--chart", chart, "Chart the points are given in")->check(CLI::IsMember({"affine", "infinity"}));

  auto* rescale = app.add_subcommand("rescale", "Rescaling limits, PCF verdicts and tameness");
  auto* audit = app.add_subcommand("audit", "Rescaling limits, dependence and the 2d - 2 bound");
  for (auto* sub : {rescale, audit}) {
    sub->add_option("map", map)->required();
    sub->add_option("--frame", frames, "Moving frame, e.g. t*z")->required();
    sub->add_option("--period", periods, "Period of each frame (default 1)");
  }

  auto* newton = app.add_subcommand("newton", "Newton polygon and zeros in a disk");
  newton->add_option("poly", poly, "Polynomial in z")->required();
  newton->add_option("--center", center, "Disk center");
  newton->add_option("--radius", radius, "Disk radius as a valuation");

  auto* examples = app.add_subcommand("examples", "Run the built-in examples");
  examples->add_flag("--list", list, "Only print the example names");
  examples->add_option("--name", name, "Run only this example");
  examples->add_option("--dump-dir", dump_dir, "Write each example as a scenario file into this directory");

  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("scenario-file", file)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (examples->parsed()) {
      int status = 0;
      nlohmann::ordered_json all = nlohmann::ordered_json::array();
      bool found = false;
      for (nadyn::Scenario s : nadyn::builtin_examples()) {
        if (!name.empty() && s.name != name) continue;
        found = true;
        if (list) {
          std::cout << s.name << "\n";
          continue;
        }
        if (!dump_dir.empty()) {
          std::filesystem::create_directories(dump_dir);
          std::ofstream(std::filesystem::path(dump_dir) / (s.name + ".scn")) << nadyn::serialize_scenario(s);
          continue;
        }
        g.apply(s);
        const nadyn::Report r = nadyn::run_scenario(s);
        if (status == 0) status = r.exit_status;
        if (g.format == "json")
          all.push_back(r.json);
        else
          std::cout << r.text() << "\n";
      }
      if (!found) {
        std::cerr << "no example named '" << name << "'\n";
        return 1;
      }
      if (g.format == "json" && !list && dump_dir.empty()) std::cout << all.dump(2) << "\n";
      return status;
    }

    nadyn::Scenario s;
    if (run->parsed()) {
      std::ifstream in(file);
      std::stringstream buf;
      buf << in.rdbuf();
      s = nadyn::parse_scenario(buf.str());
    } else {
      s.family = map;
      if (eval->parsed()) {
        s.name = "eval";
        s.analyses = {"eval"};
        s.eval_points = points;
      } else if (reduce->parsed()) {
        s.name = "reduce";
        s.analyses = {"reduce"};
      } else if (orbit->parsed()) {
        s.name = "orbit";
        s.analyses = {"orbit"};
        s.points = seeds;
        s.frames = frames_of(frames, {});
        s.budget_orbit = budget_orbit;
      } else if (image->parsed()) {
        s.name = "image";
        s.analyses = {"image"};
      } else if (rescale->parsed() || audit->parsed()) {
        s.name = rescale->parsed() ? "rescale" : "audit";
        s.analyses = {s.name};
        s.frames = frames_of(frames, periods);
      } else if (newton->parsed()) {
        s.name = "newton";
        s.family = "z";
        s.analyses = {"newton"};
        s.newton_poly = poly;
        s.newton_center = center;
        s.newton_radius = radius;
      }
    }
    g.apply(s);
    if (image->parsed())
      for (const std::string& p : points) s.points.push_back(affine_point(p, chart, s));
    const nadyn::Report r = nadyn::run_scenario(s);
    print(r, g.format);
    return r.exit_status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return nadyn::exit_status_for(e);
  }
}
