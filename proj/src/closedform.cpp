#include "qgem/closedform.hpp"

#include <cmath>
#include <sstream>

namespace qgem {

EigenQuad pt_eigenvalues(double omega_sum, double gamma, double tau) {
  const double decay = std::exp(-gamma * tau);
  const double half_phase = omega_sum * tau / 2.0;
  const double s = std::sin(half_phase);
  const double c = std::cos(half_phase);
  EigenQuad q;
  q.lambda1 = 0.25 - 0.25 * decay * (decay - 2.0 * s);
  q.lambda2 = 0.25 - 0.25 * decay * (decay + 2.0 * s);
  q.lambda3 = 0.25 + 0.25 * decay * (decay + 2.0 * c);
  q.lambda4 = 0.25 + 0.25 * decay * (decay - 2.0 * c);
  return q;
}

double witness_two_qubit(double omega_sum, double gamma, double tau) {
  return pt_eigenvalues(omega_sum, gamma, tau).min();
}

namespace {

std::string describe(const char *what, double v) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (" << v << ")";
  return os.str();
}

} // namespace

double witness_parallel(double omega_sum, double gamma, double tau) {
  if (omega_sum > 0.0)
    throw ClosedFormError(ClosedFormErrorKind::WrongSignBranch, omega_sum,
                          describe("parallel witness needs omega_sum <= 0",
                                   omega_sum));
  return pt_eigenvalues(omega_sum, gamma, tau).lambda1;
}

double witness_linear(double omega_sum, double gamma, double tau) {
  if (omega_sum < 0.0)
    throw ClosedFormError(ClosedFormErrorKind::WrongSignBranch, omega_sum,
                          describe("linear witness needs omega_sum >= 0",
                                   omega_sum));
  return pt_eigenvalues(omega_sum, gamma, tau).lambda2;
}

double required_delta_x(double target_w, const ExperimentConfig &config) {
  ExperimentConfig c = config;
  c.delta_x = 0.0;
  validate(c);
  if (c.geometry != Geometry::Parallel2)
    throw std::invalid_argument("required_delta_x is defined for parallel2 only");

  const double gt = c.gamma * c.tau;
  // Solve lambda1 = target for sin(theta), theta = (w1 + w2) tau / 2.
  const double arg =
      0.5 * std::exp(gt) * (4.0 * target_w - 1.0 + std::exp(-2.0 * gt));
  if (!(arg >= -1.0 && arg <= 1.0))
    throw ClosedFormError(ClosedFormErrorKind::ArcsinDomain, arg,
                          describe("arcsin argument outside [-1, 1]", arg));
  const double theta = std::asin(arg);

  // theta = tau (G m^2 / hbar) (1/r - 1/d), r = sqrt(d^2 + dx^2). Solving for
  // r gives r = d k tau / (k tau + d theta) with k = G m^2 / hbar.
  const double k_tau = c.constants.G * c.mass * c.mass * c.tau / c.constants.hbar;
  const double d = c.d_min;
  const double denom = k_tau + d * theta;
  if (!(denom > 0.0))
    throw ClosedFormError(ClosedFormErrorKind::NoSolution, denom,
                          describe("target phase exceeds the d_min -> infinity "
                                   "limit; denominator",
                                   denom));
  const double r = d * k_tau / denom;
  // dx^2 = r^2 - d^2 = (r - d)(r + d), with r - d written without cancellation.
  const double dx2 = (-d * d * theta / denom) * (r + d);
  if (dx2 < 0.0)
    throw ClosedFormError(ClosedFormErrorKind::NoSolution, dx2,
                          describe("target witness is above the zero-width "
                                   "value; dx^2",
                                   dx2));
  return std::sqrt(dx2);
}

} // namespace qgem
