#pragma once

#include "qgem/core.hpp"
#include "qgem/geometry.hpp"
#include "qgem/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qgem {

struct StateVector {
  int n_qubits = 0;
  std::vector<cplx> amplitudes; ///< indexed by branch, qubit 1 = MSB
};

struct DensityMatrix {
  int n_qubits = 0;
  CMatrix rho;
};

/// Final interferometer state: amplitude[b] = 2^(-n/2) exp(i rate[b] tau).
StateVector build_state(const PhaseSet &phases, double tau);

DensityMatrix density_from_state(const StateVector &state);

/// Multiplies entry (b, b') by exp(-gamma tau h(b, b')), where h counts the
/// qubit positions at which the two branch labels differ.
DensityMatrix apply_dephasing(const DensityMatrix &rho, double gamma, double tau);

/// Swaps the row/column index bits of `subsystem` (0-based qubit index,
/// qubit 0 = most significant bit). Involution; preserves trace and
/// Hermiticity. Throws std::out_of_range when subsystem >= n_qubits.
CMatrix partial_transpose(const CMatrix &m, int n_qubits, int subsystem);

struct DensityCheck {
  double hermiticity_defect = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  bool valid(double tol_hermitian = 1e-12, double tol_trace = 1e-12,
             double tol_psd = 1e-10) const {
    return hermiticity_defect <= tol_hermitian && trace_error <= tol_trace &&
           min_eigenvalue >= -tol_psd;
  }
};

DensityCheck check_density(const DensityMatrix &rho);

/// Transposed qubit for the default bipartition: qubit 2 in both the
/// 2-qubit (T2) and 3-qubit (13|2) setups.
inline constexpr int kDefaultSubsystem = 1;

/// "1|2" style label for the bipartition that transposes `subsystem`.
std::string bipartition_label(int n_qubits, int subsystem);

/// Parses "2" (1-based qubit number) or bar notation such as "13|2", where the
/// singleton side is transposed. Returns the 0-based subsystem.
std::optional<int> parse_bipartition(const std::string &text, int n_qubits);

struct WitnessOperator {
  CMatrix w;
  double lambda_min = 0.0;
  std::vector<cplx> eigenvector;
  /// Set when the two lowest eigenvalues of rho^T differ by less than 1e-12,
  /// in which case the projector depends on the chosen eigenvector.
  bool degenerate_minimum = false;
};

/// W = (|v><v|)^T where v is the eigenvector of the most negative eigenvalue
/// of `rho_pt`, transposed over the same subsystem.
WitnessOperator witness_operator(const CMatrix &rho_pt, int n_qubits,
                                 int subsystem);

struct WitnessResult {
  double lambda_min = 0.0;
  std::vector<cplx> eigenvector;
  bool entangled = false;
  int subsystem = kDefaultSubsystem;
  bool degenerate_minimum = false;
  /// 2-qubit geometries only: minimum of the analytic eigenvalue quad and
  /// |numeric - analytic|.
  std::optional<double> closed_form;
  std::optional<double> closed_form_gap;
};

/// |lambda| at or below this is reported as exactly zero; it is the
/// eigensolver's resolution on unit-trace 8x8 matrices.
inline constexpr double kEigenZeroSnap = 1e-14;

/// phases -> state -> rho -> dephasing -> partial transpose -> min eigenvalue.
WitnessResult witness_expectation(const ExperimentConfig &config,
                                  int subsystem = kDefaultSubsystem);

/// Same pipeline, stopping at the dephased density matrix.
DensityMatrix final_density(const ExperimentConfig &config);

} // namespace qgem
