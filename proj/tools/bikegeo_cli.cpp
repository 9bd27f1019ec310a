#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bikegeo/closedform.hpp"
#include "bikegeo/diagnostics.hpp"
#include "bikegeo/dynamics.hpp"
#include "bikegeo/io.hpp"
#include "bikegeo/rodshape.hpp"
#include "bikegeo/shooting.hpp"
#include "bikegeo/transforms.hpp"

namespace {

using namespace bikegeo;

struct CommonArgs {
  double a = 0.5;
  double b = 1.0;
  double t_max = 0.0;  // 0: derived from the period
  double dt_out = 0.01;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_format = true) {
  cmd->add_option("--a", args.a, "parameter a (>= 0)");
  cmd->add_option("--b", args.b, "parameter b");
  cmd->add_option("--t-max", args.t_max, "simulated arc length (default: 2 periods)");
  cmd->add_option("--dt-out", args.dt_out, "output sampling step");
  cmd->add_option("--rel-tol", args.rel_tol, "integrator relative tolerance");
  cmd->add_option("--abs-tol", args.abs_tol, "integrator absolute tolerance");
  cmd->add_option("--out", args.out, "output file (default: stdout)");
  if (with_format)
    cmd->add_option("--format", args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw Error("cannot open output file: " + out_path);
  os << payload;
}

std::string rows_to_payload(const std::vector<TrackRow>& rows,
                            const std::string& format) {
  if (format == "csv") {
    std::ostringstream os;
    write_track_csv(os, rows);
    return os.str();
  }
  nlohmann::json j = nlohmann::json::array();
  for (const TrackRow& r : rows)
    j.push_back({{"t", r.t},
                 {"front", json_vec3(r.front)},
                 {"back", json_vec3(r.back)},
                 {"kappa", r.kappa},
                 {"tau", r.tau}});
  return j.dump(2) + "\n";
}

double default_span(const GeodesicParams& params, double requested, double fallback) {
  if (requested > 0.0) return requested;
  if (params.period_T > 0.0 && std::isfinite(params.period_T))
    return fallback * params.period_T;
  return 16.0;  // soliton/line: no period to lean on
}

Vec3 parse_triple(const std::string& text, const char* what) {
  Vec3 v;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &v.x, &v.y, &v.z) != 3)
    throw Error(std::string("expected 'x,y,z' for ") + what + ": " + text);
  return v;
}

std::vector<double> parse_grid(const std::string& text) {
  // Either "lo:hi:count" or a comma-separated list.
  std::vector<double> values;
  double lo, hi;
  long count;
  if (std::sscanf(text.c_str(), "%lf:%lf:%ld", &lo, &hi, &count) == 3) {
    if (count < 1) throw Error("grid: count must be >= 1");
    for (long i = 0; i < count; ++i)
      values.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    return values;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::strtod(item.c_str(), nullptr));
  if (values.empty()) throw Error("grid: empty specification: " + text);
  return values;
}

int cmd_simulate(const CommonArgs& args) {
  const GeodesicParams params = GeodesicParams::from_ab(args.a, args.b);
  const double t_max = default_span(params, args.t_max, 2.0);
  IntegrationOptions opts;
  opts.rel_tol = args.rel_tol;
  opts.abs_tol = args.abs_tol;
  opts.dt_out = args.dt_out;
  const SampledPath path = integrate(aligned_initial_state(args.a, args.b), t_max, opts);
  emit(args.out, rows_to_payload(track_rows(path, params), args.format));
  return 0;
}

int cmd_closed_form(const CommonArgs& args) {
  const GeodesicParams params = GeodesicParams::from_ab(args.a, args.b);
  const double t_max = default_span(params, args.t_max, 2.0);
  emit(args.out,
       rows_to_payload(closed_form_rows(params, t_max, args.dt_out), args.format));
  return 0;
}

int cmd_monodromy(const CommonArgs& args, bool closed_only) {
  const GeodesicParams params = GeodesicParams::from_ab(args.a, args.b);
  if (params.is_soliton()) throw SolitonError("soliton: aperiodic");
  nlohmann::json j;
  if (closed_only) {
    j = monodromy_report(params, nullptr);
  } else {
    IntegrationOptions opts;
    opts.rel_tol = args.rel_tol;
    opts.abs_tol = args.abs_tol;
    opts.dt_out = params.period_T / 64;
    const SampledPath path = integrate(aligned_initial_state(args.a, args.b),
                                       default_span(params, args.t_max, 2.5), opts);
    j = monodromy_report(params, &path);
  }
  emit(args.out, j.dump(2) + "\n");
  return 0;
}

int cmd_correspond(const CommonArgs& args) {
  const GeodesicParams params = GeodesicParams::from_ab(args.a, args.b);
  if (params.is_soliton()) throw SolitonError("soliton: aperiodic");
  IntegrationOptions opts;
  opts.rel_tol = args.rel_tol;
  opts.abs_tol = args.abs_tol;
  opts.dt_out = args.dt_out;
  const double t_max = default_span(params, args.t_max, 2.5);
  const SampledPath path = integrate(aligned_initial_state(args.a, args.b), t_max, opts);
  const SampledPath flipped = flip_path(path);

  const std::string prefix = args.out.empty() ? std::string("correspond") : args.out;
  {
    std::ofstream os(prefix + ".original.csv", std::ios::binary);
    if (!os) throw Error("cannot open " + prefix + ".original.csv");
    write_track_csv(os, track_rows(path, params));
  }
  {
    std::ofstream os(prefix + ".flipped.csv", std::ios::binary);
    if (!os) throw Error("cannot open " + prefix + ".flipped.csv");
    write_track_csv(os, track_rows(flipped, params));
  }

  nlohmann::json j;
  j["params"] = {{"a", params.a}, {"b", params.b}};
  j["period"] = params.period_T;
  const MonodromyExtraction M = extract_monodromy_detailed(path, params);
  j["monodromy"] = {{"dtheta", M.screw.delta_theta},
                    {"dz", M.screw.delta_z},
                    {"axis_point", json_vec3(M.screw.axis_point)},
                    {"axis_dir", json_vec3(M.screw.axis_dir)},
                    {"residual", M.registration_rms}};
  if (params.b != 0.0) {
    const ScrewMotion I = half_monodromy(path, params);
    const ConjectureReport rep = conjecture_check(path, params);
    j["square_root"] = {{"dtheta", I.delta_theta},
                        {"dz", I.delta_z},
                        {"axis_point", json_vec3(I.axis_point)},
                        {"axis_dir", json_vec3(I.axis_dir)}};
    j["conjecture"] = {{"angle_I", rep.angle_found},
                       {"angle_predicted", rep.angle_predicted},
                       {"matches", rep.matches}};
  } else {
    j["square_root"] = nullptr;
    j["conjecture"] = nullptr;
  }
  std::ofstream os(prefix + ".json", std::ios::binary);
  if (!os) throw Error("cannot open " + prefix + ".json");
  os << j.dump(2) << "\n";
  return 0;
}

int cmd_check(const std::string& suite) {
  const std::vector<CheckResult> results = run_check_suite(suite);
  bool all_pass = true;
  for (const CheckResult& r : results) {
    std::printf("%s  %-45s  measured %.3e  bound %.1e\n",
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured, r.bound);
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 3;
}

int cmd_sweep(const std::string& grid_a, const std::string& grid_b,
              const std::string& out_path) {
  const std::vector<double> as = parse_grid(grid_a);
  const std::vector<double> bs = parse_grid(grid_b);

  struct Cell {
    double a, b;
    bool excluded;
    GeodesicParams params;
    Ranges rng;
    ScrewMotion mono;
  };

  std::vector<std::future<Cell>> futures;
  for (double a : as)
    for (double b : bs)
      futures.push_back(std::async(std::launch::async, [a, b] {
        Cell c{a, b, false, {}, {}, {}};
        const bool soliton = std::abs(a - 1.0) < 1e-12 && b == 0.0;
        const bool singular_char = std::abs(a * a + b * b - a) < 1e-6;
        if (soliton || singular_char || a < 0.0) {
          c.excluded = true;
          return c;
        }
        c.params = GeodesicParams::from_ab(a, b);
        c.rng = ranges(a, b);
        c.mono = c.params.has_axis_data() ? monodromy_closed(c.params) : ScrewMotion{};
        return c;
      }));

  std::ostringstream os;
  os << "a,b,p,omega,k2,n,T,kappa_min,kappa_max,tau_min,tau_max,dtheta,dz\n";
  for (auto& fut : futures) {
    const Cell c = fut.get();
    if (c.excluded) {
      std::fprintf(stderr, "sweep: excluded singular point (a=%g, b=%g)\n", c.a, c.b);
      continue;
    }
    os << format_double(c.a) << ',' << format_double(c.b) << ','
       << format_double(c.params.p_norm) << ',' << format_double(c.params.omega)
       << ',' << format_double(c.params.k.m) << ',' << format_double(c.params.n)
       << ',' << format_double(c.params.period_T) << ','
       << format_double(c.rng.kappa_min) << ',' << format_double(c.rng.kappa_max)
       << ',' << format_double(c.rng.tau_min) << ',' << format_double(c.rng.tau_max)
       << ',' << format_double(c.mono.delta_theta) << ','
       << format_double(c.mono.delta_z) << '\n';
  }
  emit(out_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bicycle geodesics in R^3: integration, closed forms, monodromy"};
  app.require_subcommand(1);

  CommonArgs sim_args, cf_args, mono_args, corr_args;
  bool mono_closed_only = false;

  CLI::App* sim = app.add_subcommand("simulate", "integrate the geodesic equations");
  add_common(sim, sim_args);

  CLI::App* cf = app.add_subcommand("closed-form", "elliptic-function track");
  add_common(cf, cf_args);

  CLI::App* mono = app.add_subcommand("monodromy", "screw-motion report (JSON)");
  add_common(mono, mono_args, false);
  mono->add_flag("--closed-only", mono_closed_only, "skip the numeric extraction");

  CLI::App* corr = app.add_subcommand("correspond",
                                      "bicycle correspondence: tracks and I, M");
  add_common(corr, corr_args, false);

  CLI::App* shoot_cmd = app.add_subcommand("shoot", "two-placement boundary value solve");
  std::string from_x = "0,0,0", from_v = "1,0,0", to_x, to_v;
  std::string shoot_out;
  ShootOptions shoot_opts;
  shoot_cmd->add_option("--from-x", from_x, "initial front wheel 'x,y,z'");
  shoot_cmd->add_option("--from-v", from_v, "initial frame direction 'x,y,z'");
  shoot_cmd->add_option("--to-x", to_x, "target front wheel 'x,y,z'")->required();
  shoot_cmd->add_option("--to-v", to_v, "target frame direction 'x,y,z'")->required();
  shoot_cmd->add_option("--seed", shoot_opts.seed, "restart RNG seed");
  shoot_cmd->add_option("--restarts", shoot_opts.restarts, "number of restarts");
  shoot_cmd->add_option("--out", shoot_out, "output file (default: stdout)");

  CLI::App* check = app.add_subcommand("check", "run invariant suites");
  std::string suite = "all";
  check->add_option("--suite", suite,
                    "elliptic|dynamics|rodshape|closedform|transforms|all")
      ->check(CLI::IsMember({"elliptic", "dynamics", "rodshape", "closedform",
                             "transforms", "all"}));

  CLI::App* sweep = app.add_subcommand("sweep", "summary table over an (a,b) grid");
  std::string grid_a = "0.2:1.8:5", grid_b = "0:2:5", sweep_out;
  sweep->add_option("--grid-a", grid_a, "'lo:hi:count' or comma list");
  sweep->add_option("--grid-b", grid_b, "'lo:hi:count' or comma list");
  sweep->add_option("--out", sweep_out, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_args);
    if (cf->parsed()) return cmd_closed_form(cf_args);
    if (mono->parsed()) return cmd_monodromy(mono_args, mono_closed_only);
    if (corr->parsed()) return cmd_correspond(corr_args);
    if (shoot_cmd->parsed()) {
      FramePlacement from{parse_triple(from_x, "--from-x"),
                          parse_triple(from_v, "--from-v").normalized()};
      FramePlacement to{parse_triple(to_x, "--to-x"),
                        parse_triple(to_v, "--to-v").normalized()};
      const auto results = shoot(from, to, shoot_opts);
      const std::string payload = shoot_report(from, to, results).dump(2) + "\n";
      if (shoot_out.empty())
        std::cout << payload;
      else {
        std::ofstream os(shoot_out, std::ios::binary);
        if (!os) throw Error("cannot open " + shoot_out);
        os << payload;
      }
      return 0;
    }
    if (check->parsed()) return cmd_check(suite);
    if (sweep->parsed()) return cmd_sweep(grid_a, grid_b, sweep_out);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
