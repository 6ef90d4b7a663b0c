#pragma once

#include <cstddef>
#include <vector>

#include "zspin/model.hpp"

namespace zspin {

/// A complex matrix acting on the named qubits. Matrices are row-major with
/// row = outgoing local configuration, column = incoming one; targets[0] is
/// the slowest digit on both sides. Gates need not be unitary.
struct Gate {
  std::vector<int> targets;
  std::vector<cd> matrix;  // dimension q^|targets| squared
  bool diagonal = false;
};

struct Boundary {
  enum class Kind { Fixed, Open, Periodic };
  Kind kind = Kind::Open;
  std::vector<int> left;   // output string, fixed boundaries only
  std::vector<int> right;  // input string, fixed boundaries only
};

/// Layered gate list. Gates within a layer act on disjoint targets and are
/// applied in a canonical order (sorted by lowest target), so permuting a
/// layer's gate list cannot change the result, bit for bit.
struct Circuit {
  int width = 0;
  int levels = 2;
  std::vector<std::vector<Gate>> layers;
  Boundary boundary;
};

struct ContractLimits {
  std::size_t dense_cap = std::size_t(1) << 22;
  int max_width = 22;
  int max_width_periodic = 14;
};

void validate(const Circuit& c);

/// Basis-state index of a digit string (digit 0 slowest).
std::size_t basis_index(const std::vector<int>& digits, int q);

/// Apply one layer's gates to a dense amplitude vector, canonical order.
void apply_layer(std::vector<cd>& amp, int width, int q, const std::vector<Gate>& layer);

/// Run every layer in order.
void apply_circuit(std::vector<cd>& amp, const Circuit& c);

/// Contract the circuit under its boundary condition.
///  fixed:    propagate the input basis state, read the output amplitude
///  open:     unnormalized all-plus caps on both sides (free sum)
///  periodic: trace by a sweep over computational basis states, accumulated
///            in basis order
cd contract(const Circuit& c, const ContractLimits& lim = {});

/// Single-threaded trace sweep with the identical accumulation order; kept
/// for tests and the kernel benchmark.
cd contract_trace_serial(const Circuit& c, const ContractLimits& lim = {});

}  // namespace zspin
