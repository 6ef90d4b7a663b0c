// Compares the serial reference kernels against their parallel counterparts:
// wall time plus a bit-for-bit equality check of the results.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "zspin/circuit.hpp"
#include "zspin/families.hpp"
#include "zspin/lattice.hpp"
#include "zspin/model.hpp"
#include "zspin/overlap.hpp"
#include "zspin/parallel.hpp"
#include "zspin/rng.hpp"

using namespace zspin;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "bitwise-identical" : "MISMATCH");
}

SpinModel ring_model(int n, std::uint64_t seed) {
  auto eng = substream(seed, 0);
  GraphModelParams p;
  p.n = n;
  p.beta = cd(0.3, 0.1);
  for (int i = 0; i < n; ++i)
    p.edges.push_back({i, (i + 1) % n, cd(uniform01(eng) - 0.5, uniform01(eng) - 0.5)});
  for (int i = 0; i < n; ++i) p.fields.emplace_back(i, cd(uniform01(eng) - 0.5, 0.0));
  return make_ising_graph(p);
}

}  // namespace

int main(int argc, char** argv) {
  int bits = 22;
  int trace_width = 12;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--bits" && i + 1 < argc) bits = std::stoi(argv[++i]);
    if (a == "--trace-width" && i + 1 < argc) trace_width = std::stoi(argv[++i]);
  }
  std::printf("threads available: %d\n", detail::max_threads());

  {
    const SpinModel m = ring_model(bits, 7);
    auto t0 = std::chrono::steady_clock::now();
    const cd zs = partition_function_serial(m, bits + 0.5);
    const double serial_ms = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    const cd zp = partition_function_exact(m, bits + 0.5);
    const double parallel_ms = ms_since(t0);
    report("enumeration", serial_ms, parallel_ms, zs == zp);
  }

  {
    // ring of 11: one edge and one field qudit per vertex, 2^22 amplitudes
    const SpinModel m = ring_model(11, 11);
    const StateVector phi = phi_state(m);
    const ProductCovector a = alpha_covector(m);
    auto t0 = std::chrono::steady_clock::now();
    const cd direct = pair_state_direct(a, phi);
    const double serial_ms = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    const cd chained = pair_state(a, phi);
    const double parallel_ms = ms_since(t0);
    // different summation orders, so compare within a tolerance
    const bool ok = std::abs(direct - chained) <= 1e-9 * std::abs(direct);
    std::printf("%-28s direct %10.1f ms   chained %9.1f ms   %s\n", "pairing",
                serial_ms, parallel_ms, ok ? "agree to 1e-9" : "MISMATCH");
  }

  {
    auto eng = substream(13, 0);
    LatticeSpec spec;
    spec.family = LatticeSpec::Family::Edge;
    spec.levels = 2;
    spec.beta = cd(0.2, 0.4);
    spec.boundary.kind = Boundary::Kind::Periodic;
    spec.edge.sites = trace_width;
    spec.edge.columns = 3;
    for (int i = 0; i < spec.edge.columns * spec.edge.sites; ++i)
      spec.edge.horizontal.push_back(ising_pair_table(cd(uniform01(eng) - 0.5, 0.0)));
    for (int i = 0; i < spec.edge.columns * (spec.edge.sites - 1); ++i)
      spec.edge.vertical.push_back(ising_pair_table(cd(uniform01(eng) - 0.5, 0.0)));
    const Circuit c = lattice_to_circuit(spec);
    ContractLimits lim;
    lim.max_width_periodic = trace_width;
    auto t0 = std::chrono::steady_clock::now();
    const cd zs = contract_trace_serial(c, lim);
    const double serial_ms = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    const cd zp = contract(c, lim);
    const double parallel_ms = ms_since(t0);
    report("trace sweep", serial_ms, parallel_ms, zs == zp);
  }
  return 0;
}
