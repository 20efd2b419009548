#pragma once

#include "qgem/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qgem {

/// Eigenvalues of the partially transposed, dephased 2-qubit density matrix,
/// as a function of the total entanglement phase rate omega_sum.
struct EigenQuad {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double lambda4 = 0.0;

  double min() const { return std::min({lambda1, lambda2, lambda3, lambda4}); }
  double sum() const { return lambda1 + lambda2 + lambda3 + lambda4; }
};

EigenQuad pt_eigenvalues(double omega_sum, double gamma, double tau);

/// Smallest eigenvalue of the quad: the 2-qubit witness for either sign of
/// omega_sum and any decoherence strength.
double witness_two_qubit(double omega_sum, double gamma, double tau);

enum class ClosedFormErrorKind { WrongSignBranch, ArcsinDomain, NoSolution };

class ClosedFormError : public std::domain_error {
public:
  ClosedFormError(ClosedFormErrorKind kind, double value, const std::string &what)
      : std::domain_error(what), kind_(kind), value_(value) {}
  ClosedFormErrorKind kind() const noexcept { return kind_; }
  /// The offending intermediate (omega_sum, arcsin argument, or dx^2).
  double value() const noexcept { return value_; }

private:
  ClosedFormErrorKind kind_;
  double value_;
};

/// lambda1: the witness branch for omega_sum <= 0 (parallel setups).
double witness_parallel(double omega_sum, double gamma, double tau);

/// lambda2: the witness branch for omega_sum >= 0 (linear setups).
double witness_linear(double omega_sum, double gamma, double tau);

/// Superposition width at which the Parallel2 lambda1 witness equals
/// `target_w`, on the principal arcsin branch. config.delta_x is ignored.
double required_delta_x(double target_w, const ExperimentConfig &config);

} // namespace qgem
