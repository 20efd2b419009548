#pragma once

#include "qgem/core.hpp"

#include <array>
#include <cstddef>
#include <initializer_list>

namespace qgem {

/// Entanglement rates per spin branch, in rad/s.
///
/// A branch is the bit-tuple (j1, j2[, j3]) with 0 = |up>, 1 = |down>, packed
/// into an integer with qubit 1 as the most significant bit. That integer is
/// also the row/column index of the state in the computational basis. The
/// rate of the all-up branch is subtracted from every entry, so rate(0) == 0.
class PhaseSet {
public:
  static constexpr std::size_t kMaxBranches = 8;

  PhaseSet() = default;
  explicit PhaseSet(int n_qubits);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t branch_count() const noexcept { return std::size_t{1} << n_qubits_; }

  double rate(std::size_t branch) const { return rates_.at(branch); }
  double &rate(std::size_t branch) { return rates_.at(branch); }

  /// Bit-tuple lookup, e.g. rate({1, 0}) is omega_1 (qubit 1 down).
  double rate(std::initializer_list<int> bits) const;
  double &rate(std::initializer_list<int> bits);

  /// omega_1 + omega_2 - omega_11: the only combination the 2-qubit
  /// partial-transpose spectrum depends on. Throws for 3 qubits.
  double two_qubit_phase_rate() const;

  /// Largest |rate| over all branches.
  double max_abs_rate() const noexcept;

private:
  int n_qubits_ = 0;
  std::array<double, kMaxBranches> rates_{};
};

std::size_t branch_index(std::initializer_list<int> bits);

PhaseSet phases_parallel2(const ExperimentConfig &config);
PhaseSet phases_linear2(const ExperimentConfig &config);
PhaseSet phases_parallel3(const ExperimentConfig &config);
PhaseSet phases_triangle3(const ExperimentConfig &config);

/// Dispatches on config.geometry.
PhaseSet phases_for(const ExperimentConfig &config);

struct EffectiveRate {
  double value = 0.0; ///< rad/s
  bool out_of_regime = false; ///< set when delta_x > d / 10
};

/// Small-width effective-rate approximations for the 2-qubit setups:
///   parallel: (G m^2 / hbar) * 2 dx^2 / d^3          with d = d_min
///   linear:   (G m^2 / (d hbar)) * (1 - dx / d)      with d = d_min + dx
/// Diagnostic output only. These disagree with the exact rate sums (the
/// parallel one is twice the leading Taylor term of the exact expression), so
/// nothing in the witness or scan path calls this.
EffectiveRate effective_rate_approx(const ExperimentConfig &config);

} // namespace qgem
