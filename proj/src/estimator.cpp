#include "zspin/estimator.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "zspin/rng.hpp"

namespace zspin {

namespace {

using EMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double rescale_residual(const std::vector<cd>& m, std::size_t d, double s) {
  // max-norm of (M/s)^dag (M/s) - I
  double worst = 0.0;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      cd acc = 0;
      for (std::size_t k = 0; k < d; ++k)
        acc += std::conj(m[k * d + r]) * m[k * d + c];
      acc /= s * s;
      if (r == c) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  return worst;
}

}  // namespace

UnitaryDecomposition normalize_to_unitary(const Circuit& c, double tol) {
  validate(c);
  UnitaryDecomposition dec;
  dec.circuit = c;
  dec.scale = 1.0;
  for (std::size_t l = 0; l < dec.circuit.layers.size(); ++l) {
    auto& layer = dec.circuit.layers[l];
    for (std::size_t p = 0; p < layer.size(); ++p) {
      Gate& g = layer[p];
      const std::size_t d = ipow(c.levels, static_cast<int>(g.targets.size()));
      Eigen::Map<const EMat> m(g.matrix.data(), static_cast<Eigen::Index>(d),
                               static_cast<Eigen::Index>(d));
      Eigen::JacobiSVD<EMat> svd(m);
      const double s = svd.singularValues()(0);
      if (!(s > 0.0))
        throw NonUnitaryError(static_cast<int>(l), static_cast<int>(p), 1.0);
      const double residual = rescale_residual(g.matrix, d, s);
      if (residual > tol)
        throw NonUnitaryError(static_cast<int>(l), static_cast<int>(p), residual);
      for (cd& x : g.matrix) x /= s;
      dec.per_gate_scales.push_back(cd(s, 0.0));
      dec.scale *= s;
    }
  }
  return dec;
}

cd unitary_amplitude(const UnitaryDecomposition& dec, const ContractLimits& lim) {
  const Circuit& c = dec.circuit;
  if (c.boundary.kind == Boundary::Kind::Periodic)
    fail("PeriodicUnsupported", "trace estimation is not supported");
  if (c.boundary.kind == Boundary::Kind::Fixed) return contract(c, lim);
  // Open boundary: contract() uses unnormalized all-plus caps; divide out
  // both cap norms so the amplitude stays inside the unit disc.
  const double dim = static_cast<double>(ipow(c.levels, c.width));
  return contract(c, lim) / dim;
}

namespace {

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

}  // namespace

EstimatorReport hadamard_estimate(const UnitaryDecomposition& dec, long long samples,
                                  std::uint64_t seed, const ContractLimits& lim) {
  if (samples < 1) fail("BadParameters", "samples must be at least 1");
  if (dec.circuit.boundary.kind == Boundary::Kind::Periodic)
    fail("PeriodicUnsupported", "trace estimation is not supported");

  const cd a = unitary_amplitude(dec, lim);

  EstimatorReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.scale = dec.scale;
  if (dec.circuit.boundary.kind == Boundary::Kind::Open) {
    const double dim = static_cast<double>(ipow(dec.circuit.levels, dec.circuit.width));
    rep.scale *= dim;  // both caps are sums of dim basis states, norm sqrt(dim)
  }

  // one substream per estimated component; the substreams are independent,
  // so the two branches may run on separate workers
  const double p0[2] = {clamp01((1.0 + a.real()) / 2.0), clamp01((1.0 + a.imag()) / 2.0)};
  double est[2], se[2];
#pragma omp parallel for schedule(static)
  for (int comp = 0; comp < 2; ++comp) {
    auto eng = substream(seed, static_cast<std::uint64_t>(comp));
    long long zeros = 0;
    for (long long i = 0; i < samples; ++i)
      if (uniform01(eng) < p0[comp]) ++zeros;
    const double f0 = static_cast<double>(zeros) / static_cast<double>(samples);
    est[comp] = 2.0 * (f0 - 0.5);
    se[comp] = 2.0 * std::sqrt(f0 * (1.0 - f0) / static_cast<double>(samples));
  }
  rep.estimate = cd(est[0], est[1]);
  rep.stderr_re = se[0];
  rep.stderr_im = se[1];
  rep.z_estimate = rep.scale * rep.estimate;
  return rep;
}

EstimatorReport estimate_partition_function(const LatticeSpec& spec, long long samples,
                                            std::uint64_t seed, double tol,
                                            const ContractLimits& lim) {
  const Circuit c = lattice_to_circuit(spec);
  const UnitaryDecomposition dec = normalize_to_unitary(c, tol);
  return hadamard_estimate(dec, samples, seed, lim);
}

}  // namespace zspin
