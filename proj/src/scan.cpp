#include "qgem/scan.hpp"

#include "qgem/closedform.hpp"
#include "qgem/geometry.hpp"
#include "qgem/quantum.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

namespace qgem {

namespace {

void check_axis(const AxisRange &a, const char *name) {
  auto fail = [&](const std::string &why) {
    throw ConfigError(ConfigErrorKind::Parse, name, std::string(name) + ": " + why);
  };
  if (!(a.lo < a.hi))
    fail("lo must be < hi");
  if (a.points < 2)
    fail("points must be >= 2");
  if (a.log_scale && !(a.lo > 0.0))
    fail("log-spaced axis needs lo > 0");
  if (a.lo < 0.0)
    fail("lo must be >= 0");
}

double effective_dx_hi(const ScanSpec &spec) {
  return spec.delta_x.hi > 0.0 ? spec.delta_x.hi : 10.0 * spec.base.d_min;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

void validate(const ScanSpec &spec) {
  ExperimentConfig c = spec.base;
  c.gamma = 0.0;
  c.delta_x = 0.0;
  validate(c);
  check_axis(spec.gamma, "gamma_range");
  AxisRange dx = spec.delta_x;
  dx.hi = effective_dx_hi(spec);
  check_axis(dx, "delta_x_range");
  if (spec.subsystem < 0 || spec.subsystem >= qubit_count(spec.base.geometry))
    throw ConfigError(ConfigErrorKind::Parse, "bipartition",
                      "bipartition: subsystem out of range");
}

namespace {

std::vector<double> axis_points(const AxisRange &a, double hi) {
  std::vector<double> x(static_cast<std::size_t>(a.points));
  const double l0 = a.log_scale ? std::log(a.lo) : a.lo;
  const double l1 = a.log_scale ? std::log(hi) : hi;
  for (int i = 0; i < a.points; ++i) {
    const double t = l0 + (l1 - l0) * i / (a.points - 1);
    x[i] = a.log_scale ? std::exp(t) : t;
  }
  x.front() = a.lo;
  x.back() = hi;
  return x;
}

} // namespace

std::vector<double> gamma_axis(const ScanSpec &spec) {
  return axis_points(spec.gamma, spec.gamma.hi);
}

std::vector<double> delta_x_axis(const ScanSpec &spec) {
  return axis_points(spec.delta_x, effective_dx_hi(spec));
}

double scan_witness(const ExperimentConfig &c, int subsystem) {
  if (qubit_count(c.geometry) == 2) {
    validate(c);
    return witness_two_qubit(phases_for(c).two_qubit_phase_rate(), c.gamma, c.tau);
  }
  return witness_expectation(c, subsystem).lambda_min;
}

double branch_phase(const ExperimentConfig &c) {
  const PhaseSet p = phases_for(c);
  const double rate =
      p.n_qubits() == 2 ? std::abs(p.two_qubit_phase_rate()) : p.max_abs_rate();
  return rate * c.tau / 2.0;
}

std::vector<ScanRow> grid_scan(const ScanSpec &spec) {
  validate(spec);
  const auto gammas = gamma_axis(spec);
  const auto widths = delta_x_axis(spec);
  const bool two_qubit = qubit_count(spec.base.geometry) == 2;
  std::vector<ScanRow> rows(gammas.size() * widths.size());

  parallel_for(rows.size(), spec.threads, [&](std::size_t idx) {
    ExperimentConfig c = spec.base;
    c.gamma = gammas[idx / widths.size()];
    c.delta_x = widths[idx % widths.size()];
    ScanRow &row = rows[idx];
    row.geometry = c.geometry;
    row.mass = c.mass;
    row.d_min = c.d_min;
    row.tau = c.tau;
    row.gamma = c.gamma;
    row.delta_x = c.delta_x;
    row.witness = scan_witness(c, spec.subsystem);
    if (two_qubit && idx % 50 == 0) {
      const double numeric = witness_expectation(c, spec.subsystem).lambda_min;
      if (std::abs(numeric - row.witness) > 1e-10) {
        std::ostringstream os;
        os.precision(17);
        os << "closed form and numeric witness disagree at gamma=" << c.gamma
           << " delta_x=" << c.delta_x << ": " << row.witness << " vs "
           << numeric;
        throw std::logic_error(os.str());
      }
    }
  });
  return rows;
}

MinDxResult min_delta_x(double gamma, const ExperimentConfig &base,
                        const MinDxOptions &opts) {
  if (!(opts.target_w > -0.5 && opts.target_w < 0.25))
    throw ConfigError(ConfigErrorKind::Parse, "target_w",
                      "target_w must lie in (-1/2, 1/4)");
  if (opts.bracket_points < 1 || !(opts.tolerance > 0.0))
    throw std::invalid_argument("min_delta_x: bad bracketing options");
  ExperimentConfig c = base;
  c.gamma = gamma;
  c.delta_x = 0.0;
  validate(c);

  auto at = [&](double dx) {
    ExperimentConfig x = c;
    x.delta_x = dx;
    return x;
  };
  auto witness = [&](double dx) { return scan_witness(at(dx), opts.subsystem); };

  MinDxResult r;
  const double upper = opts.upper > 0.0 ? opts.upper : 10.0 * c.d_min;

  // The branch phase grows monotonically with delta_x in every geometry.
  constexpr double kCap = std::numbers::pi / 2.0;
  double cap = upper;
  if (branch_phase(at(upper)) > kCap) {
    double lo = 0.0, hi = upper;
    while (hi - lo > 1e-12 * upper) {
      const double mid = 0.5 * (lo + hi);
      (branch_phase(at(mid)) > kCap ? hi : lo) = mid;
    }
    cap = lo;
  }
  r.phase_cap_delta_x = cap;

  const double w0 = witness(0.0);
  if (w0 <= opts.target_w) {
    r.witness = w0;
    return r;
  }

  double lo = 0.0, hi = 0.0, min_w = w0;
  bool found = false;
  for (int i = 1; i <= opts.bracket_points; ++i) {
    const double x = i == opts.bracket_points
                         ? cap
                         : cap * static_cast<double>(i) / opts.bracket_points;
    const double w = witness(x);
    min_w = std::min(min_w, w);
    if (w <= opts.target_w) {
      hi = x;
      found = true;
      break;
    }
    lo = x;
  }
  if (!found) {
    std::ostringstream os;
    os.precision(6);
    os << "no crossing of target " << opts.target_w << " at gamma=" << gamma
       << " Hz below delta_x=" << cap << " m; minimum witness " << min_w;
    throw NoCrossing(min_w, os.str());
  }

  while (hi - lo > opts.tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    (witness(mid) <= opts.target_w ? hi : lo) = mid;
  }
  r.lo = lo;
  r.hi = hi;
  r.delta_x = hi;
  r.witness = witness(hi);
  r.phase = branch_phase(at(hi));
  return r;
}

std::vector<CurvePoint> threshold_curve(const ScanSpec &spec) {
  validate(spec);
  const auto gammas = gamma_axis(spec);
  std::vector<CurvePoint> out(gammas.size());
  MinDxOptions opts;
  opts.target_w = spec.target_w;
  opts.subsystem = spec.subsystem;
  opts.upper = effective_dx_hi(spec);
  parallel_for(gammas.size(), spec.threads, [&](std::size_t i) {
    out[i].gamma = gammas[i];
    try {
      out[i].min_delta_x = min_delta_x(gammas[i], spec.base, opts).delta_x;
    } catch (const NoCrossing &) {
      out[i].min_delta_x.reset();
    }
  });
  return out;
}

void write_scan_csv(std::ostream &os, const std::vector<ScanRow> &rows) {
  os << kScanCsvHeader << '\n';
  for (const auto &r : rows)
    os << to_string(r.geometry) << ',' << g17(r.mass) << ',' << g17(r.d_min)
       << ',' << g17(r.tau) << ',' << g17(r.gamma) << ',' << g17(r.delta_x)
       << ',' << g17(r.witness) << '\n';
}

void write_curve_csv(std::ostream &os, const ScanSpec &spec,
                     const std::vector<CurvePoint> &curve) {
  const auto &b = spec.base;
  os << kCurveCsvHeader << '\n';
  for (const auto &p : curve) {
    os << to_string(b.geometry) << ',' << g17(b.mass) << ',' << g17(b.d_min)
       << ',' << g17(b.tau) << ',' << g17(p.gamma) << ',';
    if (p.min_delta_x)
      os << g17(*p.min_delta_x) << ",ok\n";
    else
      os << ",no_crossing\n";
  }
}

} // namespace qgem
