#include "qgem/quantum.hpp"

#include "qgem/closedform.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qgem {

StateVector build_state(const PhaseSet &phases, double tau) {
  const std::size_t dim = phases.branch_count();
  StateVector s;
  s.n_qubits = phases.n_qubits();
  s.amplitudes.resize(dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const double phi = phases.rate(b) * tau;
    if (!std::isfinite(phi))
      throw std::invalid_argument("non-finite branch phase");
    s.amplitudes[b] = std::polar(norm, phi);
  }
  return s;
}

DensityMatrix density_from_state(const StateVector &state) {
  return {state.n_qubits, outer(state.amplitudes, state.amplitudes)};
}

DensityMatrix apply_dephasing(const DensityMatrix &in, double gamma, double tau) {
  if (!(gamma >= 0.0))
    throw std::invalid_argument("gamma must be >= 0");
  DensityMatrix out = in;
  if (gamma == 0.0)
    return out;
  const std::size_t dim = in.rho.dim();
  // Damping factor per number of differing qubits.
  double factor[4] = {1.0, 0.0, 0.0, 0.0};
  for (int h = 1; h <= in.n_qubits; ++h)
    factor[h] = std::exp(-gamma * tau * h);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      out.rho(i, j) *= factor[std::popcount(i ^ j)];
  return out;
}

CMatrix partial_transpose(const CMatrix &m, int n_qubits, int subsystem) {
  if (subsystem < 0 || subsystem >= n_qubits)
    throw std::out_of_range("subsystem " + std::to_string(subsystem) +
                            " out of range for " + std::to_string(n_qubits) +
                            " qubits");
  const std::size_t dim = m.dim();
  if (dim != (std::size_t{1} << n_qubits))
    throw std::invalid_argument("matrix dimension does not match qubit count");
  const std::size_t mask = std::size_t{1} << (n_qubits - 1 - subsystem);
  CMatrix r(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      // Exchange the subsystem bit between row and column index.
      const std::size_t bi = i & mask, bj = j & mask;
      r((i & ~mask) | bj, (j & ~mask) | bi) = m(i, j);
    }
  return r;
}

DensityCheck check_density(const DensityMatrix &d) {
  DensityCheck c;
  c.hermiticity_defect = d.rho.hermiticity_defect();
  c.trace_error = std::abs(d.rho.trace() - 1.0);
  c.min_eigenvalue = hermitian_eigensystem(d.rho).values.front();
  return c;
}

std::string bipartition_label(int n_qubits, int subsystem) {
  std::string kept;
  for (int q = 0; q < n_qubits; ++q)
    if (q != subsystem)
      kept += std::to_string(q + 1);
  return kept + "|" + std::to_string(subsystem + 1);
}

std::optional<int> parse_bipartition(const std::string &text, int n_qubits) {
  if (text.empty())
    return std::nullopt;
  const auto bar = text.find('|');
  if (bar == std::string::npos) {
    if (text.size() != 1 || text[0] < '1' || text[0] - '0' > n_qubits)
      return std::nullopt;
    return text[0] - '1';
  }
  const std::string left = text.substr(0, bar), right = text.substr(bar + 1);
  // labels read "rest|transposed"; the singleton may also be written first
  const std::string &single = right.size() == 1 ? right : left;
  const std::string &rest = right.size() == 1 ? left : right;
  if (single.size() != 1 ||
      static_cast<int>(left.size() + right.size()) != n_qubits)
    return std::nullopt;
  unsigned seen = 0;
  for (char ch : left + right) {
    if (ch < '1' || ch - '0' > n_qubits)
      return std::nullopt;
    seen |= 1u << (ch - '1');
  }
  if (seen != (1u << n_qubits) - 1 || rest.empty())
    return std::nullopt;
  return single[0] - '1';
}

WitnessOperator witness_operator(const CMatrix &rho_pt, int n_qubits,
                                 int subsystem) {
  const EigenSystem es = hermitian_eigensystem(rho_pt);
  WitnessOperator op;
  op.lambda_min = es.values[0];
  op.eigenvector = es.vectors[0];
  op.degenerate_minimum = es.values.size() > 1 && es.values[1] - es.values[0] < 1e-12;
  op.w = partial_transpose(outer(op.eigenvector, op.eigenvector), n_qubits,
                           subsystem);
  return op;
}

DensityMatrix final_density(const ExperimentConfig &config) {
  validate(config);
  const PhaseSet phases = phases_for(config);
  return apply_dephasing(density_from_state(build_state(phases, config.tau)),
                         config.gamma, config.tau);
}

WitnessResult witness_expectation(const ExperimentConfig &config, int subsystem) {
  validate(config);
  const PhaseSet phases = phases_for(config);
  const DensityMatrix rho = apply_dephasing(
      density_from_state(build_state(phases, config.tau)), config.gamma,
      config.tau);
  const CMatrix rho_pt = partial_transpose(rho.rho, rho.n_qubits, subsystem);
  const EigenSystem es = hermitian_eigensystem(rho_pt);

  WitnessResult r;
  r.subsystem = subsystem;
  r.lambda_min = std::abs(es.values[0]) <= kEigenZeroSnap ? 0.0 : es.values[0];
  r.eigenvector = es.vectors[0];
  r.degenerate_minimum = es.values[1] - es.values[0] < 1e-12;
  r.entangled = r.lambda_min < 0.0;
  if (phases.n_qubits() == 2) {
    r.closed_form =
        witness_two_qubit(phases.two_qubit_phase_rate(), config.gamma, config.tau);
    r.closed_form_gap = std::abs(*r.closed_form - r.lambda_min);
  }
  return r;
}

} // namespace qgem
