#include "qgem/cli.hpp"

#include "qgem/closedform.hpp"
#include "qgem/config_io.hpp"
#include "qgem/quantum.hpp"
#include "qgem/scan.hpp"
#include "qgem/units.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace qgem::cli {

namespace {

using nlohmann::json;

struct QuantityFlags {
  std::string config_path;
  std::string mass, dmin, dx, tau, geometry, bipartition;
  std::vector<std::string> gammas;
};

ExperimentConfig resolve_config(const QuantityFlags &f, bool need_dx) {
  ExperimentConfig c;
  c.tau = 1.0;
  if (!f.config_path.empty())
    c = config_from_json(load_json_file(f.config_path), c);
  if (!f.mass.empty())
    c.mass = parse_quantity(f.mass, Dimension::Mass, "mass");
  if (!f.dmin.empty())
    c.d_min = parse_quantity(f.dmin, Dimension::Length, "d_min");
  if (need_dx && !f.dx.empty())
    c.delta_x = parse_quantity(f.dx, Dimension::Length, "delta_x");
  if (!f.tau.empty())
    c.tau = parse_quantity(f.tau, Dimension::Time, "tau");
  if (!f.gammas.empty() && need_dx)
    c.gamma = parse_quantity(f.gammas.front(), Dimension::Rate, "gamma");
  if (!f.geometry.empty()) {
    const auto g = parse_geometry(f.geometry);
    if (!g)
      throw ConfigError(ConfigErrorKind::Parse, "geometry",
                        "geometry: expected one of parallel2, linear2, "
                        "parallel3, triangle3");
    c.geometry = *g;
  }
  return validate(c);
}

int resolve_subsystem(const std::string &text, Geometry g) {
  if (text.empty())
    return kDefaultSubsystem;
  const auto sub = parse_bipartition(text, qubit_count(g));
  if (!sub)
    throw ConfigError(ConfigErrorKind::Parse, "bipartition",
                      "bipartition: cannot parse \"" + text + "\"");
  return *sub;
}

json eigenvector_json(const std::vector<cplx> &v) {
  json arr = json::array();
  for (const auto &z : v)
    arr.push_back({z.real(), z.imag()});
  return arr;
}

int cmd_witness(const QuantityFlags &f, std::ostream &out) {
  const ExperimentConfig c = resolve_config(f, true);
  const int sub = resolve_subsystem(f.bipartition, c.geometry);
  const WitnessResult r = witness_expectation(c, sub);
  json j = {
      {"witness", r.lambda_min},
      {"entangled", r.entangled},
      {"bipartition", bipartition_label(qubit_count(c.geometry), sub)},
      {"degenerate_minimum", r.degenerate_minimum},
      {"eigenvector", eigenvector_json(r.eigenvector)},
      {"config", config_to_json(c)},
  };
  if (r.closed_form) {
    j["closed_form"] = *r.closed_form;
    j["closed_form_gap"] = *r.closed_form_gap;
  }
  out << j.dump(2) << '\n';
  return kOk;
}

int cmd_min_dx(const QuantityFlags &f, double target_w, int threads,
               std::ostream &out, std::ostream &err) {
  const ExperimentConfig base = resolve_config(f, false);
  std::vector<double> gammas;
  if (f.gammas.empty()) {
    gammas.push_back(base.gamma);
  } else {
    for (const auto &g : f.gammas)
      gammas.push_back(parse_quantity(g, Dimension::Rate, "gamma"));
  }
  MinDxOptions opts;
  opts.target_w = target_w;
  opts.subsystem = resolve_subsystem(f.bipartition, base.geometry);

  std::vector<json> results(gammas.size());
  std::vector<std::string> failures(gammas.size());
  parallel_for(gammas.size(), threads, [&](std::size_t i) {
    try {
      const MinDxResult r = min_delta_x(gammas[i], base, opts);
      results[i] = {{"gamma_hz", gammas[i]},
                    {"status", "ok"},
                    {"min_delta_x_m", r.delta_x},
                    {"witness", r.witness},
                    {"branch_phase", r.phase}};
    } catch (const NoCrossing &e) {
      results[i] = {{"gamma_hz", gammas[i]},
                    {"status", "no_crossing"},
                    {"min_witness", e.min_witness()}};
      failures[i] = e.what();
    }
  });

  ExperimentConfig shown = base;
  shown.delta_x = 0.0;
  json j = {{"target_w", target_w},
            {"bipartition",
             bipartition_label(qubit_count(base.geometry), opts.subsystem)},
            {"results", results},
            {"config", config_to_json(shown)}};
  out << j.dump(2) << '\n';
  int code = kOk;
  for (const auto &msg : failures)
    if (!msg.empty()) {
      err << "error: " << msg << '\n';
      code = kNoCrossing;
    }
  return code;
}

void open_output(std::ofstream &file, const std::string &path) {
  file.open(path, std::ios::binary);
  if (!file)
    throw ConfigError(ConfigErrorKind::Parse, "out",
                      "out: cannot write \"" + path + "\"");
}

int cmd_scan(const std::string &spec_path, const std::string &out_path,
             int threads, bool curve, std::ostream &out) {
  ScanSpec spec = scan_spec_from_json(load_json_file(spec_path));
  spec.threads = threads;
  std::ofstream file;
  open_output(file, out_path);
  std::size_t rows = 0;
  if (curve) {
    const auto pts = threshold_curve(spec);
    write_curve_csv(file, spec, pts);
    rows = pts.size();
  } else {
    const auto grid = grid_scan(spec);
    write_scan_csv(file, grid);
    rows = grid.size();
  }
  file.close();
  json j = {{"out", out_path},
            {"rows", rows},
            {"config", config_to_json(spec.base)}};
  out << j.dump(2) << '\n';
  return kOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Gravitationally induced entanglement witness calculator", "qgem"};
  app.require_subcommand(1);

  QuantityFlags flags;
  std::string spec_path, out_path;
  double target_w = 0.0;
  int threads = 0;

  auto add_quantities = [&](CLI::App *sub, bool with_dx) {
    sub->add_option("--config", flags.config_path, "JSON config file");
    sub->add_option("--mass", flags.mass, "mass, e.g. 1e-14kg");
    sub->add_option("--dmin", flags.dmin, "minimal separation, e.g. 35um");
    if (with_dx)
      sub->add_option("--dx", flags.dx, "superposition width, e.g. 5um");
    sub->add_option("--tau", flags.tau, "hold time, e.g. 1s");
    sub->add_option("--geometry", flags.geometry,
                    "parallel2 | linear2 | parallel3 | triangle3");
    sub->add_option("--bipartition", flags.bipartition,
                    "transposed qubit, e.g. 2 or 13|2");
  };

  auto *witness = app.add_subcommand("witness", "PPT witness for one config");
  add_quantities(witness, true);
  witness->add_option("--gamma", flags.gammas, "decoherence rate, e.g. 1e-2Hz");

  auto *min_dx = app.add_subcommand("min-dx", "minimal superposition width");
  add_quantities(min_dx, false);
  min_dx->add_option("--gamma", flags.gammas, "decoherence rates")
      ->delimiter(',');
  min_dx->add_option("--target-w", target_w, "target witness value");
  min_dx->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto *scan = app.add_subcommand("scan", "witness grid over (gamma, delta_x)");
  auto *curve = app.add_subcommand("curve", "threshold curve over gamma");
  for (auto *sub : {scan, curve}) {
    sub->add_option("--spec", spec_path, "scan spec JSON")->required();
    sub->add_option("--out", out_path, "CSV output path")->required();
    sub->add_option("--threads", threads, "worker threads (0 = all cores)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*witness)
      return cmd_witness(flags, out);
    if (*min_dx)
      return cmd_min_dx(flags, target_w, threads, out, err);
    return cmd_scan(spec_path, out_path, threads, static_cast<bool>(*curve), out);
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ClosedFormError &e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ClosedFormErrorKind::WrongSignBranch ? kUsage : kNoCrossing;
  } catch (const NoCrossing &e) {
    err << "error: " << e.what() << '\n';
    return kNoCrossing;
  }
}

} // namespace qgem::cli
