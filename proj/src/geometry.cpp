#include "qgem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgem {

PhaseSet::PhaseSet(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits != 2 && n_qubits != 3)
    throw std::invalid_argument("PhaseSet supports 2 or 3 qubits");
}

std::size_t branch_index(std::initializer_list<int> bits) {
  std::size_t idx = 0;
  for (int b : bits) {
    if (b != 0 && b != 1)
      throw std::invalid_argument("branch bits must be 0 or 1");
    idx = (idx << 1) | static_cast<std::size_t>(b);
  }
  return idx;
}

double PhaseSet::rate(std::initializer_list<int> bits) const {
  if (static_cast<int>(bits.size()) != n_qubits_)
    throw std::invalid_argument("branch label length does not match qubits");
  return rate(branch_index(bits));
}

double &PhaseSet::rate(std::initializer_list<int> bits) {
  if (static_cast<int>(bits.size()) != n_qubits_)
    throw std::invalid_argument("branch label length does not match qubits");
  return rate(branch_index(bits));
}

double PhaseSet::two_qubit_phase_rate() const {
  if (n_qubits_ != 2)
    throw std::logic_error("two_qubit_phase_rate needs a 2-qubit PhaseSet");
  return rates_[0b10] + rates_[0b01] - rates_[0b11];
}

double PhaseSet::max_abs_rate() const noexcept {
  double m = 0.0;
  for (std::size_t b = 0; b < branch_count(); ++b)
    m = std::max(m, std::abs(rates_[b]));
  return m;
}

namespace {

double coupling(const ExperimentConfig &c) {
  return c.constants.G * c.mass * c.mass / c.constants.hbar;
}

void require(const ExperimentConfig &c, Geometry g) {
  validate(c);
  if (c.geometry != g)
    throw std::invalid_argument("config geometry is " +
                                std::string(to_string(c.geometry)) +
                                ", expected " + std::string(to_string(g)));
}

// Rate of each branch relative to all-up: a sum over the pairs whose spins
// differ of k (1/sqrt(d^2 + dx^2) - 1/d), with d the pair's up-up distance.
// Terms are summed in sorted order so that permutation-equivalent branches
// give bit-identical rates.
template <class PairDistance>
PhaseSet three_body(const ExperimentConfig &c, PairDistance base) {
  const double k = coupling(c);
  PhaseSet p(3);
  for (std::size_t b = 0; b < 8; ++b) {
    const int bits[3] = {static_cast<int>((b >> 2) & 1),
                         static_cast<int>((b >> 1) & 1),
                         static_cast<int>(b & 1)};
    std::array<double, 3> terms{};
    std::size_t n = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (bits[i] != bits[j]) {
          const double d = base(i, j);
          terms[n++] = 1.0 / std::hypot(d, c.delta_x) - 1.0 / d;
        }
    std::sort(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(n));
    double sum = 0.0;
    for (std::size_t t = 0; t < n; ++t)
      sum += terms[t];
    p.rate(b) = k * sum;
  }
  return p;
}

} // namespace

PhaseSet phases_parallel2(const ExperimentConfig &c) {
  require(c, Geometry::Parallel2);
  const double w = coupling(c) * (1.0 / std::hypot(c.d_min, c.delta_x) - 1.0 / c.d_min);
  PhaseSet p(2);
  p.rate(0b10) = w;
  p.rate(0b01) = w;
  p.rate(0b11) = 0.0;
  return p;
}

PhaseSet phases_linear2(const ExperimentConfig &c) {
  require(c, Geometry::Linear2);
  const double k = coupling(c);
  const double d = c.d_min;
  const double dx = c.delta_x;
  // Co-linear: up_1 | dx | down_1 | d_min | up_2 | dx | down_2.
  PhaseSet p(2);
  p.rate(0b10) = k * (1.0 / d - 1.0 / (d + dx));
  p.rate(0b01) = k * (1.0 / (d + 2.0 * dx) - 1.0 / (d + dx));
  p.rate(0b11) = 0.0;
  return p;
}

PhaseSet phases_parallel3(const ExperimentConfig &c) {
  require(c, Geometry::Parallel3);
  return three_body(c, [d = c.d_min](int i, int j) { return d * (j - i); });
}

PhaseSet phases_triangle3(const ExperimentConfig &c) {
  require(c, Geometry::Triangle3);
  return three_body(c, [d = c.d_min](int, int) { return d; });
}

PhaseSet phases_for(const ExperimentConfig &c) {
  switch (c.geometry) {
  case Geometry::Parallel2:
    return phases_parallel2(c);
  case Geometry::Linear2:
    return phases_linear2(c);
  case Geometry::Parallel3:
    return phases_parallel3(c);
  case Geometry::Triangle3:
    return phases_triangle3(c);
  }
  throw std::invalid_argument("unknown geometry");
}

EffectiveRate effective_rate_approx(const ExperimentConfig &c) {
  validate(c);
  const double k = coupling(c);
  const double dx = c.delta_x;
  EffectiveRate r;
  switch (c.geometry) {
  case Geometry::Parallel2: {
    const double d = c.d_min;
    r.value = k * 2.0 * dx * dx / (d * d * d);
    r.out_of_regime = dx > d / 10.0;
    break;
  }
  case Geometry::Linear2: {
    const double d = c.d_min + dx;
    r.value = k / d * (1.0 - dx / d);
    r.out_of_regime = dx > d / 10.0;
    break;
  }
  default:
    throw std::invalid_argument(
        "effective_rate_approx is defined for 2-qubit geometries only");
  }
  return r;
}

} // namespace qgem
