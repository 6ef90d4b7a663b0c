#pragma once

#include <cstdint>

#include "zspin/circuit.hpp"
#include "zspin/lattice.hpp"

namespace zspin {

/// Raised when some gate is not proportional to a unitary at the requested
/// tolerance, i.e. the couplings lie outside the unitary regime.
class NonUnitaryError : public Error {
 public:
  NonUnitaryError(int layer, int position, double residual)
      : Error("NonUnitaryRegime",
              "gate at layer " + std::to_string(layer) + ", position " +
                  std::to_string(position) + " is not proportional to a unitary (residual " +
                  std::to_string(residual) + ")"),
        layer_(layer),
        position_(position),
        residual_(residual) {}
  int layer() const { return layer_; }
  int position() const { return position_; }
  double residual() const { return residual_; }

 private:
  int layer_, position_;
  double residual_;
};

/// The original circuit rewritten as scale * (product of unitary gates).
/// Each gate is divided by its largest singular value; the residual
/// max-norm of (g^dag g - I) must fall below the tolerance.
struct UnitaryDecomposition {
  Circuit circuit;                 // every gate unitary within tolerance
  cd scale{1.0, 0.0};              // product of the extracted factors
  std::vector<cd> per_gate_scales; // layer-major, gate order within layer
};

struct EstimatorReport {
  cd estimate{0.0};       // sampled amplitude estimate, both components
  double stderr_re = 0.0; // 2*sqrt(f0*(1-f0)/samples) per component
  double stderr_im = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  cd scale{1.0, 0.0};     // gate scales, plus cap norms for open boundaries
  cd z_estimate{0.0};     // scale * estimate
};

inline constexpr double kDefaultUnitaryTol = 1e-9;

UnitaryDecomposition normalize_to_unitary(const Circuit& c, double tol = kDefaultUnitaryTol);

/// Exact amplitude of the rescaled circuit between normalized caps.
cd unitary_amplitude(const UnitaryDecomposition& dec, const ContractLimits& lim = {});

/// Simulate the sampling estimator for <L|U|R>: the exact amplitude fixes
/// two Bernoulli outcome distributions, P(0) = (1 + Re a)/2 for the real
/// branch and P(0) = (1 + Im a)/2 for the phase-shifted branch; each branch
/// draws `samples` outcomes from its own seed substream. Deterministic given
/// the seed. Periodic boundaries are not supported.
EstimatorReport hadamard_estimate(const UnitaryDecomposition& dec, long long samples,
                                  std::uint64_t seed, const ContractLimits& lim = {});

/// Build the circuit for a lattice, rescale it to unitaries, and run the
/// sampling estimator; the report's z_estimate targets the partition
/// function with additive error |scale| * O(1/sqrt(samples)).
EstimatorReport estimate_partition_function(const LatticeSpec& spec, long long samples,
                                            std::uint64_t seed,
                                            double tol = kDefaultUnitaryTol,
                                            const ContractLimits& lim = {});

}  // namespace zspin
