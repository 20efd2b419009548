#pragma once

#include "qgem/core.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgem {

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
  int points = 2;
  bool log_scale = false;
};

struct ScanSpec {
  /// mass, d_min, tau, geometry are used; gamma and delta_x are overwritten
  /// per grid point.
  ExperimentConfig base;
  AxisRange gamma{1e-4, 1e-1, 200, true}; ///< Hz
  AxisRange delta_x{0.0, 0.0, 400};       ///< m; hi = 0 means 10 * d_min
  double target_w = 0.0;
  int subsystem = 1;
  int threads = 0; ///< 0 = hardware concurrency
};

/// Throws ConfigError if an axis has lo >= hi, fewer than 2 points, a
/// negative bound, or lo <= 0 on a log-spaced axis.
void validate(const ScanSpec &spec);

std::vector<double> gamma_axis(const ScanSpec &spec);
std::vector<double> delta_x_axis(const ScanSpec &spec);

struct ScanRow {
  Geometry geometry = Geometry::Parallel2;
  double mass = 0.0;
  double d_min = 0.0;
  double tau = 0.0;
  double gamma = 0.0;
  double delta_x = 0.0;
  double witness = 0.0;
};

/// Witness value used by all scans: closed form for 2-qubit geometries,
/// numeric pipeline otherwise.
double scan_witness(const ExperimentConfig &config, int subsystem = 1);

/// Entanglement-phase magnitude that bounds the first monotone branch:
/// |w1 + w2 - w11| tau / 2 for two qubits, max_b |rate_b| tau / 2 for three.
double branch_phase(const ExperimentConfig &config);

/// Row order is gamma-major, delta_x ascending. Output does not depend on the
/// thread count. Every 50th point of a 2-qubit scan is re-evaluated with the
/// numeric pipeline; a disagreement above 1e-10 throws std::logic_error.
std::vector<ScanRow> grid_scan(const ScanSpec &spec);

struct MinDxOptions {
  double target_w = 0.0;
  int subsystem = 1;
  double upper = 0.0;     ///< search ceiling in m; 0 means 10 * d_min
  int bracket_points = 400;
  double tolerance = 1e-9; ///< bisection width, m
};

struct MinDxResult {
  double delta_x = 0.0;  ///< upper end of the final bracket
  double witness = 0.0;  ///< witness at delta_x
  double lo = 0.0;       ///< final bracket
  double hi = 0.0;
  double phase = 0.0;    ///< branch_phase at delta_x
  double phase_cap_delta_x = 0.0; ///< where branch_phase reaches pi/2
};

class NoCrossing : public std::runtime_error {
public:
  NoCrossing(double min_witness, const std::string &what)
      : std::runtime_error(what), min_witness_(min_witness) {}
  double min_witness() const noexcept { return min_witness_; }

private:
  double min_witness_;
};

/// Smallest delta_x > 0 with witness(delta_x) <= target, searched on the
/// first phase branch only (branch_phase <= pi/2). Brackets on a uniform grid
/// and then bisects. Returns delta_x = 0 when the zero-width witness already
/// meets the target. Throws NoCrossing when the target is not reached before
/// the phase cap or the search ceiling.
MinDxResult min_delta_x(double gamma, const ExperimentConfig &base,
                        const MinDxOptions &opts = {});

struct CurvePoint {
  double gamma = 0.0;
  std::optional<double> min_delta_x; ///< empty on NoCrossing
};

std::vector<CurvePoint> threshold_curve(const ScanSpec &spec);

inline constexpr const char *kScanCsvHeader =
    "geometry,mass_kg,d_min_m,tau_s,gamma_hz,delta_x_m,witness";
inline constexpr const char *kCurveCsvHeader =
    "geometry,mass_kg,d_min_m,tau_s,gamma_hz,min_delta_x_m,status";

void write_scan_csv(std::ostream &os, const std::vector<ScanRow> &rows);
void write_curve_csv(std::ostream &os, const ScanSpec &spec,
                     const std::vector<CurvePoint> &curve);

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). Exceptions from workers are rethrown on the caller.
template <class Fn> void parallel_for(std::size_t n, int threads, Fn &&fn);

} // namespace qgem

#include "qgem/detail/parallel.hpp"
