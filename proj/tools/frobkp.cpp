// Batch verification driver.
//
//   frobkp --suite gram --m 1 --n 1 --seed 7
//   frobkp potential build --m 2 --n 1 --emit text
//   frobkp hierarchy recursion --m 1 --n 1 --p-max 2 --t-range 2 [--point file.json]
//   frobkp submanifold canonical --m 1 --n 1 --point file.json --tol 1e-9
//
// JSON Lines go to --out (or stdout), the summary to stdout (or stderr when the records
// use stdout). Exit code 0: all pass, 1: some check failed, 2: bad configuration or input.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "frobkp/suites.hpp"

using namespace frobkp;

namespace {

int emit(const Report& report, const std::optional<std::string>& out) {
  if (out) {
    std::ofstream f(*out);
    if (!f) throw ConfigError("cannot write " + *out);
    f << to_jsonl(report);
    std::cout << summary(report);
  } else {
    std::cout << to_jsonl(report);
    std::cerr << summary(report);
  }
  return report.any_fail() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the Frobenius manifolds M_{m,n} and their hierarchies"};
  app.require_subcommand(0, 1);

  SuiteConfig cfg;
  std::string out;
  auto add_common = [&](CLI::App* a) {
    a->add_option("--m", cfg.m, "number of h coordinates")->check(CLI::PositiveNumber);
    a->add_option("--n", cfg.n, "number of hhat coordinates")->check(CLI::PositiveNumber);
    a->add_option("--depth", cfg.depth, "truncation depth K");
    a->add_option("--seed", cfg.seed, "random seed");
    a->add_option("--out", out, "write JSON Lines here");
  };
  add_common(&app);
  app.add_option("--suite", cfg.suite, "gram | frobenius | potential | wdvv | recursion | appendix | canonical | all");
  app.add_option("--t-range", cfg.t_range, "largest |i| of the t^i labels");
  std::string point;
  app.add_option("--point", point, "point file (JSON)");
  app.add_option("--tol", cfg.tol, "tolerance of the float checks");
  app.add_option("--points", cfg.points, "random points per suite");
  app.add_option("--p-max", cfg.p_max, "largest p of the recursion suite");

  auto* potential = app.add_subcommand("potential", "potential of M_{m,n}");
  auto* build = potential->add_subcommand("build", "build F_{m,n} from the third derivatives");
  std::string emit_kind = "json";
  add_common(build);
  build->add_option("--emit", emit_kind, "json | text")->check(CLI::IsMember({"json", "text"}));
  potential->require_subcommand(1);

  auto* hierarchy = app.add_subcommand("hierarchy", "principal hierarchy");
  auto* recursion = hierarchy->add_subcommand("recursion", "bi-Hamiltonian recursion on a loop point");
  add_common(recursion);
  recursion->add_option("--p-max", cfg.p_max, "largest p");
  recursion->add_option("--t-range", cfg.t_range, "largest |i| of the t^i flows");
  recursion->add_option("--point", point, "x = 0 values of the loop point (JSON point file)");
  hierarchy->require_subcommand(1);

  auto* sub = app.add_subcommand("submanifold", "finite Frobenius manifold M_{m,n}");
  auto* canonical = sub->add_subcommand("canonical", "canonical coordinates at a point");
  add_common(canonical);
  canonical->add_option("--point", point, "point file: {m, n, l[, rho]} or a full point");
  canonical->add_option("--tol", cfg.tol, "tolerance");
  sub->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (!point.empty()) cfg.point = point;
  if (!out.empty()) cfg.out = out;

  try {
    if (*build) {
      validate(cfg);
      if (emit_kind == "text") {
        std::cout << poly_text(build_F(cfg.m, cfg.n));
        return 0;
      }
      return emit(potential_report(cfg.m, cfg.n), cfg.out);
    }
    if (*recursion) {
      validate(cfg);
      LaxPoint<XPoly> pt = cfg.point ? lift_to_loop(point_from_json(read_json_file(*cfg.point), cfg.depth), cfg.seed)
                                     : gen_loop_point(cfg.m, cfg.n, cfg.seed, 2, cfg.depth);
      return emit(recursion_report(pt, cfg.p_max, cfg.t_range, cfg.threads), cfg.out);
    }
    if (*canonical) {
      validate(cfg);
      if (!cfg.point) throw ConfigError("submanifold canonical needs --point");
      const LPoint lp = lpoint_from_json(read_json_file(*cfg.point));
      if (lp.m != cfg.m || lp.n != cfg.n) throw ConfigError("point file (m, n) differs from --m/--n");
      return emit(canonical_report(lp, cfg.tol), cfg.out);
    }
    return emit(run_suite(cfg), cfg.out);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const PointParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
}
