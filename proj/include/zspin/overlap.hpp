#pragma once

#include <cstddef>
#include <vector>

#include "zspin/model.hpp"

namespace zspin {

/// Dense unnormalized state over one qudit per interaction. Qudit k has
/// dimension dims[k]; amplitudes are row-major with qudit 0 slowest.
struct StateVector {
  std::vector<std::size_t> dims;
  std::vector<cd> amps;
  std::vector<int> labels;  // originating interaction index per qudit

  std::size_t total_dim() const {
    std::size_t d = 1;
    for (std::size_t x : dims) d *= x;
    return d;
  }
};

/// One local coefficient vector per qudit; pairs bilinearly with a
/// StateVector of matching dimensions.
struct ProductCovector {
  std::vector<std::vector<cd>> coeffs;
};

struct Projection {
  int qudit = 0;
  std::vector<cd> coeffs;
};

inline constexpr std::size_t kDefaultDenseCap = std::size_t(1) << 22;

/// Sum over all configurations of the product basis state determined by each
/// interaction's quantum digit. Built by enumeration; amplitudes count how
/// many configurations land on each composite digit index.
StateVector phi_state(const SpinModel& m, std::size_t dense_cap = kDefaultDenseCap,
                      double max_bits = kDefaultMaxBits);

/// Per-qudit coefficients given by the interaction's Boltzmann weights.
ProductCovector alpha_covector(const SpinModel& m);

/// Bilinear pairing sum_idx (prod of per-qudit coefficients) * amplitude.
/// No complex conjugation anywhere: with complex couplings the pairing equals
/// the partition function only in the bilinear form.
cd pair_state(const ProductCovector& a, const StateVector& phi);

/// Reference pairing that walks the full composite index space in one pass
/// (chunk-ordered). Slower path with a different operation order; kept for
/// tests and the kernel benchmark.
cd pair_state_direct(const ProductCovector& a, const StateVector& phi);

/// Contract the selected qudits with the given coefficient vectors, leaving a
/// state on the remaining qudits.
StateVector project(const StateVector& phi, const std::vector<Projection>& ps);

/// For a two-level edge+field model, verify by direct action on the dense
/// amplitudes that the flip generator of every vertex (X on the vertex qudit
/// and on all incident edge qudits) and the phase generator of every edge
/// (Z on the edge qudit and both endpoint qudits) map phi to itself exactly.
bool check_stabilizers(const SpinModel& m, const StateVector& phi);

}  // namespace zspin
