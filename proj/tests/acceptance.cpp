// Acceptance suite: every criterion prints one [PASS]/[FAIL] line with its
// measured margin and wall time. The process exits with the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "zspin/cdt.hpp"
#include "zspin/circuit.hpp"
#include "zspin/estimator.hpp"
#include "zspin/families.hpp"
#include "zspin/lattice.hpp"
#include "zspin/overlap.hpp"
#include "zspin/parallel.hpp"
#include "zspin/rewrite.hpp"
#include "zspin/rng.hpp"

using namespace zspin;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  std::printf("[%s] %d %-22s %s (%.2f s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

double rel_err(cd got, cd want) { return std::abs(got - want) / std::abs(want); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1e", v);
  return buf;
}

// --- criterion 1: overlap pairing equals enumeration ------------------------

SpinModel random_general_model(std::mt19937_64& eng) {
  SpinModel m;
  m.levels = uniform01(eng) < 0.5 ? 2 : 3;
  m.num_vars = 2 + static_cast<int>(uniform_below(eng, 11));  // up to 12
  m.beta = oracle::random_complex(eng, 0.6);
  const std::size_t dim_budget = std::size_t(1) << 18;
  std::size_t dim = 1;
  const int tries = 3 + static_cast<int>(uniform_below(eng, 16));
  for (int t = 0; t < tries; ++t) {
    const int kind = static_cast<int>(uniform_below(eng, 3));
    if (m.levels == 2 && kind == 0) {
      if (dim * 2 > dim_budget) break;
      const int a = static_cast<int>(uniform_below(eng, m.num_vars));
      int b = static_cast<int>(uniform_below(eng, m.num_vars));
      if (a == b) b = (b + 1) % m.num_vars;
      m.interactions.push_back(make_ising_edge(a, b, oracle::random_complex(eng, 0.8)));
      dim *= 2;
    } else if (kind == 1) {
      const std::size_t d = static_cast<std::size_t>(m.levels);
      if (dim * d > dim_budget) break;
      std::vector<cd> energies(d);
      for (cd& e : energies) e = oracle::random_complex(eng, 0.7);
      m.interactions.push_back(make_energy_table(
          {static_cast<int>(uniform_below(eng, m.num_vars))}, std::move(energies)));
      dim *= d;
    } else {
      const std::size_t d = static_cast<std::size_t>(m.levels) * m.levels;
      if (dim * d > dim_budget) break;
      const int a = static_cast<int>(uniform_below(eng, m.num_vars));
      const int b = static_cast<int>(uniform_below(eng, m.num_vars));
      std::vector<cd> energies(d);
      for (cd& e : energies) e = oracle::random_complex(eng, 0.7);
      m.interactions.push_back(make_energy_table({a, b}, std::move(energies)));
      dim *= d;
    }
  }
  if (m.interactions.empty())
    m.interactions.push_back(make_energy_table(
        {0}, std::vector<cd>(static_cast<std::size_t>(m.levels), cd(0.1, 0.1))));
  return m;
}

void criterion_overlap() {
  Timer timer;
  auto eng = substream(1001, 0);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const SpinModel m = random_general_model(eng);
    const cd want = partition_function_exact(m);
    const cd got = pair_state(alpha_covector(m), phi_state(m));
    worst = std::max(worst, rel_err(got, want));
  }
  report(1, "overlap-identity", worst <= 1e-9 && timer.seconds() <= 30.0,
         "max rel err " + sci(worst) + " over 100 models", timer.seconds());
}

// --- criterion 2: circuit contraction equals enumeration --------------------

LocalTable random_energy_table(std::mt19937_64& eng, int arity) {
  LocalTable t;
  t.entries.resize(ipow(2, arity));
  for (cd& e : t.entries) e = oracle::random_complex(eng, 0.6);
  return t;
}

LatticeSpec criterion_vertex_lattice(std::mt19937_64& eng, Boundary::Kind kind) {
  LatticeSpec spec;
  spec.family = LatticeSpec::Family::Vertex;
  spec.beta = oracle::random_complex(eng, 0.6);
  spec.vertex.width = 4;
  spec.vertex.depth = 3;
  for (int i = 0; i < vertex_gate_count(4, 3); ++i)
    spec.vertex.gates.push_back(random_energy_table(eng, 4));
  spec.boundary.kind = kind;
  if (kind == Boundary::Kind::Fixed)
    for (int w = 0; w < 4; ++w) {
      spec.boundary.left.push_back(static_cast<int>(uniform_below(eng, 2)));
      spec.boundary.right.push_back(static_cast<int>(uniform_below(eng, 2)));
    }
  return spec;
}

LatticeSpec criterion_edge_lattice(std::mt19937_64& eng, Boundary::Kind kind) {
  LatticeSpec spec;
  spec.family = LatticeSpec::Family::Edge;
  spec.beta = oracle::random_complex(eng, 0.6);
  spec.edge.sites = 3;
  spec.edge.columns = 4;
  const int gaps = kind == Boundary::Kind::Periodic ? 4 : 3;
  for (int i = 0; i < gaps * 3; ++i)
    spec.edge.horizontal.push_back(ising_pair_table(oracle::random_complex(eng, 0.8)));
  for (int i = 0; i < 4 * 2; ++i)
    spec.edge.vertical.push_back(ising_pair_table(oracle::random_complex(eng, 0.8)));
  spec.boundary.kind = kind;
  if (kind == Boundary::Kind::Fixed)
    for (int w = 0; w < 3; ++w) {
      spec.boundary.left.push_back(static_cast<int>(uniform_below(eng, 2)));
      spec.boundary.right.push_back(static_cast<int>(uniform_below(eng, 2)));
    }
  return spec;
}

LatticeSpec criterion_lgt_lattice(std::mt19937_64& eng, Boundary::Kind kind) {
  LatticeSpec spec;
  spec.family = LatticeSpec::Family::Lgt;
  spec.beta = oracle::random_complex(eng, 0.5);
  spec.lgt.sx = 2;
  spec.lgt.sy = 2;
  spec.lgt.steps = 3;
  spec.lgt.spatial_periodic = true;
  const int gaps = kind == Boundary::Kind::Periodic ? 3 : 2;
  for (int i = 0; i < gaps * 8; ++i)
    spec.lgt.temporal.push_back(ising_pair_table(oracle::random_complex(eng, 0.6)));
  for (int i = 0; i < gaps * 4; ++i)
    spec.lgt.plaquette.push_back(ising_plaquette_table(oracle::random_complex(eng, 0.6)));
  spec.boundary.kind = kind;
  if (kind == Boundary::Kind::Fixed)
    for (int w = 0; w < 8; ++w) {
      spec.boundary.left.push_back(static_cast<int>(uniform_below(eng, 2)));
      spec.boundary.right.push_back(static_cast<int>(uniform_below(eng, 2)));
    }
  return spec;
}

void criterion_circuits() {
  Timer timer;
  auto eng = substream(1002, 0);
  double worst = 0, worst_case_s = 0;
  bool pass = true;
  const char* families[3] = {"vertex", "edge", "lgt"};
  for (int f = 0; f < 3; ++f) {
    for (auto kind :
         {Boundary::Kind::Fixed, Boundary::Kind::Open, Boundary::Kind::Periodic}) {
      Timer case_timer;
      LatticeSpec spec;
      if (f == 0)
        spec = criterion_vertex_lattice(eng, kind);
      else if (f == 1)
        spec = criterion_edge_lattice(eng, kind);
      else
        spec = criterion_lgt_lattice(eng, kind);
      const cd via_circuit = contract(lattice_to_circuit(spec));
      const cd via_model = partition_function_exact(lattice_to_model(spec));
      const double err = rel_err(via_circuit, via_model);
      worst = std::max(worst, err);
      worst_case_s = std::max(worst_case_s, case_timer.seconds());
      pass = pass && err <= 1e-9 && case_timer.seconds() <= 10.0;
      (void)families[f];
    }
  }
  report(2, "circuit-equivalence", pass,
         "max rel err " + sci(worst) + " over 9 cases, slowest case " +
             sci(worst_case_s) + " s",
         timer.seconds());
}

// --- criterion 3: rewrite rules preserve Z ----------------------------------

void criterion_rewrites() {
  Timer timer;
  auto eng = substream(1003, 0);
  double worst = 0;
  int merges = 0, deletes = 0;
  while (merges + deletes < 200) {
    const SpinModel m = oracle::random_ising_model(eng, 6, /*complex=*/true);
    if (merges <= deletes) {
      std::vector<int> mergeable;
      for (std::size_t i = 0; i < m.interactions.size(); ++i)
        if (m.interactions[i].tag == "ising") mergeable.push_back(static_cast<int>(i));
      if (mergeable.empty()) continue;
      const int pick = mergeable[uniform_below(eng, mergeable.size())];
      SpinModel constrained = m;
      constrained.interactions[static_cast<std::size_t>(pick)] = make_equal_constraint(
          m.interactions[static_cast<std::size_t>(pick)].vars[0],
          m.interactions[static_cast<std::size_t>(pick)].vars[1], m.levels);
      worst = std::max(worst, rel_err(partition_function_exact(merge(m, pick)),
                                      partition_function_exact(constrained)));
      ++merges;
    } else {
      const int pick = static_cast<int>(uniform_below(eng, m.interactions.size()));
      SpinModel zeroed = m;
      for (cd& e : zeroed.interactions[static_cast<std::size_t>(pick)].table) e = 0;
      worst = std::max(worst, rel_err(partition_function_exact(delete_interaction(m, pick)),
                                      partition_function_exact(zeroed)));
      ++deletes;
    }
  }
  double worst_clique = 0;
  for (int trial = 0; trial < 20; ++trial) {
    GraphModelParams p;
    p.n = 2 + static_cast<int>(uniform_below(eng, 4));
    p.beta = oracle::random_complex(eng, 0.6);
    for (int a = 0; a < p.n; ++a)
      for (int b = a + 1; b < p.n; ++b)
        if (uniform01(eng) < 0.6) p.edges.push_back({a, b, oracle::random_complex(eng, 0.8)});
    const SpinModel target = make_ising_graph(p);
    const int host = p.n + 1 + static_cast<int>(uniform_below(eng, 2));
    const cd ratio = partition_function_exact(specialize_clique(host, target)) /
                     partition_function_exact(target);
    worst_clique = std::max(worst_clique,
                            std::abs(ratio - std::pow(2.0, host - p.n)) /
                                std::pow(2.0, host - p.n));
  }
  const bool pass = worst <= 1e-12 && worst_clique <= 1e-12 && merges + deletes == 200;
  report(3, "rewrite-correctness", pass,
         "max rel err " + sci(worst) + " over " + std::to_string(merges) + " merges + " +
             std::to_string(deletes) + " deletes, clique " + sci(worst_clique),
         timer.seconds());
}

// --- criterion 4: projected states match graph states ------------------------

double graph_state_residual(int n, const std::vector<std::pair<int, int>>& edges) {
  GraphModelParams p;
  p.n = n;
  p.beta = cd(1, 0);
  for (const auto& [a, b] : edges) p.edges.push_back({a, b, cd(1, 0)});
  for (int v = 0; v < n; ++v) p.fields.emplace_back(v, cd(0, 0));
  const SpinModel m = make_ising_graph(p);

  StateVector phi = phi_state(m);
  std::vector<Projection> ps;
  for (std::size_t k = 0; k < phi.labels.size(); ++k)
    if (m.interactions[static_cast<std::size_t>(phi.labels[k])].tag == "ising")
      ps.push_back({static_cast<int>(k), {cd(1, 0), cd(0, -1)}});
  StateVector proj = project(phi, ps);

  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const auto& [a, b] : edges) {
    ++deg[static_cast<std::size_t>(a)];
    ++deg[static_cast<std::size_t>(b)];
  }
  for (std::size_t idx = 0; idx < proj.amps.size(); ++idx) {
    std::size_t rest = idx;
    cd phase = 1;
    for (std::size_t k = proj.dims.size(); k-- > 0;) {
      if (rest % 2 == 1) {
        const int vertex = m.interactions[static_cast<std::size_t>(proj.labels[k])].vars[0];
        phase *= std::pow(cd(0, 1), deg[static_cast<std::size_t>(vertex)]);
      }
      rest /= 2;
    }
    proj.amps[idx] *= phase;
  }

  const auto want = oracle::graph_state_amps(n, edges);
  std::size_t k_max = 0;
  for (std::size_t k = 0; k < want.size(); ++k)
    if (std::abs(want[k]) > std::abs(want[k_max])) k_max = k;
  const cd scalar = proj.amps[k_max] / want[k_max];
  double resid = 0, scale = 0;
  for (std::size_t k = 0; k < want.size(); ++k) {
    resid = std::max(resid, std::abs(proj.amps[k] - scalar * want[k]));
    scale = std::max(scale, std::abs(proj.amps[k]));
  }
  return resid / scale;
}

void criterion_graph_state() {
  Timer timer;
  const double r1 = graph_state_residual(3, {{0, 1}, {1, 2}});
  const double r2 = graph_state_residual(3, {{0, 1}, {1, 2}, {0, 2}});
  const double r3 = graph_state_residual(4, {{0, 1}, {0, 2}, {0, 3}});
  const double worst = std::max(r1, std::max(r2, r3));
  report(4, "graph-state-identity", worst <= 1e-9,
         "max residual " + sci(worst) + " on path-3, triangle, star-4", timer.seconds());
}

// --- criterion 5: stabilizer generators fix the interaction state -------------

void criterion_stabilizers() {
  Timer timer;
  auto eng = substream(1005, 0);
  int passed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    GraphModelParams p;
    p.n = 2 + static_cast<int>(uniform_below(eng, 4));  // up to 5 vertices
    p.beta = oracle::random_complex(eng, 0.5);
    for (int a = 0; a < p.n; ++a)
      for (int b = a + 1; b < p.n; ++b)
        if (uniform01(eng) < 0.5) p.edges.push_back({a, b, oracle::random_complex(eng, 0.8)});
    for (int v = 0; v < p.n; ++v) p.fields.emplace_back(v, oracle::random_complex(eng, 0.5));
    const SpinModel m = make_ising_graph(p);
    if (check_stabilizers(m, phi_state(m))) ++passed;
  }
  report(5, "stabilizer-invariance", passed == 50,
         std::to_string(passed) + "/50 random graphs fixed exactly", timer.seconds());
}

// --- criterion 6: sampling estimator statistics -------------------------------

LatticeSpec unitary_regime_lattice(Boundary::Kind kind) {
  LatticeSpec spec;
  spec.family = LatticeSpec::Family::Edge;
  spec.beta = cd(0, std::acos(-1.0) / 4);
  spec.edge.sites = 2;
  spec.edge.columns = 4;
  const int gaps = kind == Boundary::Kind::Periodic ? 4 : 3;
  spec.edge.horizontal.assign(static_cast<std::size_t>(gaps * 2), ising_pair_table(cd(1, 0)));
  spec.edge.vertical.assign(4, ising_pair_table(cd(1, 0)));
  spec.boundary.kind = kind;
  if (kind == Boundary::Kind::Fixed) {
    spec.boundary.left = {0, 0};
    spec.boundary.right = {0, 0};
  }
  return spec;
}

void criterion_estimator() {
  Timer timer;
  const LatticeSpec spec = unitary_regime_lattice(Boundary::Kind::Fixed);
  const Circuit c = lattice_to_circuit(spec);
  const UnitaryDecomposition dec = normalize_to_unitary(c);
  const cd a = unitary_amplitude(dec);

  int covered = 0;
  for (int s = 0; s < 100; ++s) {
    const EstimatorReport rep = hadamard_estimate(dec, 10000, static_cast<std::uint64_t>(s));
    if (std::abs(rep.estimate.real() - a.real()) <= 3 * rep.stderr_re &&
        std::abs(rep.estimate.imag() - a.imag()) <= 3 * rep.stderr_im)
      ++covered;
  }

  const EstimatorReport small = hadamard_estimate(dec, 10000, 424242);
  const EstimatorReport large = hadamard_estimate(dec, 1000000, 424242);
  const double ratio_re = small.stderr_re / large.stderr_re;
  const double ratio_im = small.stderr_im / large.stderr_im;
  const bool ratio_ok =
      ratio_re >= 8.0 && ratio_re <= 12.0 && ratio_im >= 8.0 && ratio_im <= 12.0;

  bool rejects_real = false;
  try {
    LatticeSpec real_spec = spec;
    real_spec.beta = cd(1, 0);
    estimate_partition_function(real_spec, 100, 1);
  } catch (const NonUnitaryError&) {
    rejects_real = true;
  }

  const bool pass = covered >= 95 && ratio_ok && rejects_real;
  report(6, "estimator-statistics", pass,
         std::to_string(covered) + "/100 seeds covered, stderr ratios " + sci(ratio_re) +
             "/" + sci(ratio_im) + ", real couplings rejected: " +
             (rejects_real ? "yes" : "no"),
         timer.seconds());
}

// --- criterion 7: fork codec and sampler ---------------------------------------

std::vector<ForkArray> valid_arrays(int rows, int cols) {
  std::vector<ForkArray> out;
  const int row_patterns = (1 << cols) - 1;
  std::size_t total = 1;
  for (int r = 0; r < rows; ++r) total *= static_cast<std::size_t>(row_patterns);
  for (std::size_t r = 0; r < total; ++r) {
    std::size_t rest = r;
    ForkArray fa;
    fa.rows = rows;
    fa.cols = cols;
    fa.bits.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (int t = 0; t < rows; ++t) {
      const int pattern = 1 + static_cast<int>(rest % static_cast<std::size_t>(row_patterns));
      rest /= static_cast<std::size_t>(row_patterns);
      for (int c = 0; c < cols; ++c)
        fa.bits[static_cast<std::size_t>(t * cols + c)] =
            static_cast<std::uint8_t>((pattern >> c) & 1);
    }
    out.push_back(std::move(fa));
  }
  return out;
}

double chain_tv_distance(int rows, int cols, double lambda, std::uint64_t seed) {
  MetropolisParams p;
  p.rows = rows;
  p.cols = cols;
  p.lambda_cc = lambda;
  p.steps = 1000000;
  p.seed = seed;
  std::map<std::vector<std::uint8_t>, long long> visits;
  metropolis_sample(p, [&](long long, const ForkArray& s) { ++visits[s.bits]; });

  std::map<std::vector<std::uint8_t>, double> boltzmann;
  double norm = 0;
  for (const auto& fa : valid_arrays(rows, cols)) {
    const double w = std::exp(-lambda * 2.0 * fa.popcount());
    boltzmann[fa.bits] = w;
    norm += w;
  }
  double tv = 0;
  for (const auto& [bits, w] : boltzmann) {
    const auto it = visits.find(bits);
    const double emp = it == visits.end() ? 0.0 : static_cast<double>(it->second) / p.steps;
    tv += std::abs(emp - w / norm);
  }
  return tv / 2.0;
}

void criterion_cdt() {
  Timer timer;
  ForkArray ones;
  ones.rows = 4;
  ones.cols = 6;
  ones.bits.assign(24, 1);
  const FoliatedTriangulation tri = decode(ones);
  bool pass = tri.faces.size() == 48;

  std::map<GridPoint, int> inc;
  for (const auto& f : tri.faces)
    for (const auto& v : f.verts) ++inc[v];
  for (int slice = 2; slice <= 3; ++slice)
    for (int col = 1; col <= 5; ++col) pass = pass && inc.at(GridPoint{slice, col}) == 6;

  bool roundtrip = true;
  for (int rows = 1; rows <= 3; ++rows)
    for (int cols = 1; cols <= 3; ++cols)
      for (const auto& fa : valid_arrays(rows, cols))
        roundtrip = roundtrip && encode(decode(fa)).bits == fa.bits;
  pass = pass && roundtrip;

  double worst_tv = 0;
  for (const double lambda : {0.0, 0.5}) {
    worst_tv = std::max(worst_tv, chain_tv_distance(2, 2, lambda, 7001));
    worst_tv = std::max(worst_tv, chain_tv_distance(2, 3, lambda, 7002));
  }
  pass = pass && worst_tv <= 0.02 && timer.seconds() <= 60.0;
  report(7, "cdt-codec", pass,
         std::string("faces/coordination ok, round trips ") + (roundtrip ? "ok" : "BAD") +
             ", max TV " + sci(worst_tv),
         timer.seconds());
}

// --- criterion 8: determinism across thread counts ------------------------------

void criterion_determinism() {
  Timer timer;
  auto eng = substream(1008, 0);
  const SpinModel model = oracle::random_ising_model(eng, 10, /*complex=*/true);
  const LatticeSpec est_spec = unitary_regime_lattice(Boundary::Kind::Fixed);
  const LatticeSpec trace_spec = [] {
    LatticeSpec s = unitary_regime_lattice(Boundary::Kind::Periodic);
    s.boundary.kind = Boundary::Kind::Periodic;
    return s;
  }();

  MetropolisParams mp;
  mp.rows = 2;
  mp.cols = 3;
  mp.lambda_cc = 0.5;
  mp.steps = 100000;
  mp.seed = 5;

  struct Snapshot {
    cd z, trace, z_est;
    double stderr_re, mean_volume;
    bool operator==(const Snapshot&) const = default;
  };
  auto snapshot = [&] {
    Snapshot s;
    s.z = partition_function_exact(model);
    s.trace = contract(lattice_to_circuit(trace_spec));
    const EstimatorReport rep = estimate_partition_function(est_spec, 20000, 99);
    s.z_est = rep.z_estimate;
    s.stderr_re = rep.stderr_re;
    s.mean_volume = metropolis_sample(mp).mean_volume;
    return s;
  };

  detail::set_threads(1);
  const Snapshot serial = snapshot();
  detail::set_threads(4);
  const Snapshot parallel = snapshot();
  detail::set_threads(0);

  const bool pass = serial == parallel &&
                    partition_function_serial(model) == parallel.z &&
                    contract_trace_serial(lattice_to_circuit(trace_spec)) == parallel.trace;
  report(8, "determinism", pass, "1-thread and 4-thread runs bit-identical", timer.seconds());
}

}  // namespace

int main() {
  criterion_overlap();
  criterion_circuits();
  criterion_rewrites();
  criterion_graph_state();
  criterion_stabilizers();
  criterion_estimator();
  criterion_cdt();
  criterion_determinism();
  if (failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
