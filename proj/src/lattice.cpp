#include "zspin/lattice.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numeric>

namespace zspin {

LocalTable ising_pair_table(cd coupling) {
  return {TableKind::Energy, {-coupling, coupling, coupling, -coupling}};
}

LocalTable ising_plaquette_table(cd coupling) {
  LocalTable t;
  t.entries.resize(16);
  for (int s = 0; s < 16; ++s) {
    const int parity = std::popcount(static_cast<unsigned>(s)) & 1;
    t.entries[static_cast<std::size_t>(s)] = parity ? coupling : -coupling;
  }
  return t;
}

LocalTable potts_pair_table(cd coupling, int q) {
  LocalTable t;
  t.entries.assign(static_cast<std::size_t>(q) * q, cd(0.0));
  for (int s = 0; s < q; ++s) t.entries[static_cast<std::size_t>(s) * q + s] = -coupling;
  return t;
}

// Six-vertex weights in the order (a1, a2, b1, b2, c1, c2). Nonzero entries
// of the 16-slot table, indexed (out_i, out_j, in_k, in_l) with l fastest:
//   a1 = w(0,0|0,0)   a2 = w(1,1|1,1)
//   b1 = w(0,1|0,1)   b2 = w(1,0|1,0)
//   c1 = w(0,1|1,0)   c2 = w(1,0|0,1)
LocalTable six_vertex_table(const std::vector<cd>& w) {
  if (w.size() != 6) fail("BadCouplingCount", "six-vertex needs six weights");
  LocalTable t;
  t.kind = TableKind::Weight;
  t.entries.assign(16, cd(0.0));
  auto at = [&](int i, int j, int k, int l) -> cd& {
    return t.entries[static_cast<std::size_t>(((i * 2 + j) * 2 + k) * 2 + l)];
  };
  at(0, 0, 0, 0) = w[0];
  at(1, 1, 1, 1) = w[1];
  at(0, 1, 0, 1) = w[2];
  at(1, 0, 1, 0) = w[3];
  at(0, 1, 1, 0) = w[4];
  at(1, 0, 0, 1) = w[5];
  return t;
}

int vertex_layer_gate_count(int width, int layer) {
  const int start = layer % 2;
  return std::max(0, (width - start) / 2);
}

int vertex_gate_count(int width, int depth) {
  int n = 0;
  for (int d = 0; d < depth; ++d) n += vertex_layer_gate_count(width, d);
  return n;
}

int lgt_edge_count(const LgtLatticeSpec& s) {
  if (s.spatial_periodic) return 2 * s.sx * s.sy;
  return s.sx * (s.sy + 1) + (s.sx + 1) * s.sy;
}

int lgt_plaquette_count(const LgtLatticeSpec& s) { return s.sx * s.sy; }

std::vector<std::array<int, 4>> lgt_plaquettes(const LgtLatticeSpec& s) {
  const int W = s.sx, H = s.sy;
  std::vector<std::array<int, 4>> out;
  out.reserve(static_cast<std::size_t>(W) * H);
  if (s.spatial_periodic) {
    auto ex = [&](int i, int j) { return j * W + i; };
    auto ey = [&](int i, int j) { return W * H + j * W + i; };
    for (int j = 0; j < H; ++j)
      for (int i = 0; i < W; ++i)
        out.push_back({ex(i, j), ex(i, (j + 1) % H), ey(i, j), ey((i + 1) % W, j)});
  } else {
    const int nx = W * (H + 1);
    auto ex = [&](int i, int j) { return j * W + i; };
    auto ey = [&](int i, int j) { return nx + j * (W + 1) + i; };
    for (int j = 0; j < H; ++j)
      for (int i = 0; i < W; ++i)
        out.push_back({ex(i, j), ex(i, j + 1), ey(i, j), ey(i + 1, j)});
  }
  return out;
}

int lattice_width(const LatticeSpec& spec) {
  switch (spec.family) {
    case LatticeSpec::Family::Vertex:
      return spec.vertex.width;
    case LatticeSpec::Family::Edge:
      return spec.edge.sites;
    case LatticeSpec::Family::Lgt:
      return lgt_edge_count(spec.lgt);
  }
  return 0;
}

namespace {

bool periodic_time(const LatticeSpec& spec) {
  return spec.boundary.kind == Boundary::Kind::Periodic;
}

void check_table(const LocalTable& t, int q, int arity, const char* role) {
  const std::size_t want = ipow(q, arity);
  if (t.entries.size() != want)
    fail("BadCouplingCount", std::string(role) + " table has " +
                                 std::to_string(t.entries.size()) + " entries, expected " +
                                 std::to_string(want));
}

std::vector<cd> weight_entries(const LocalTable& t, cd beta) {
  if (t.kind == TableKind::Weight) return t.entries;
  std::vector<cd> w(t.entries.size());
  for (std::size_t i = 0; i < t.entries.size(); ++i) w[i] = std::exp(-beta * t.entries[i]);
  return w;
}

Interaction table_interaction(std::vector<int> vars, const LocalTable& t, std::string tag) {
  if (t.kind == TableKind::Weight)
    return make_weight_table(std::move(vars), t.entries, std::move(tag));
  return make_energy_table(std::move(vars), t.entries, std::move(tag));
}

Interaction clamp_interaction(int var, int value, int q) {
  std::vector<cd> w(static_cast<std::size_t>(q), cd(0.0));
  w[static_cast<std::size_t>(value)] = 1.0;
  return make_weight_table({var}, std::move(w), "clamp");
}

Gate diagonal_gate(std::vector<int> targets, const std::vector<cd>& diag) {
  Gate g;
  g.targets = std::move(targets);
  g.diagonal = true;
  const std::size_t d = diag.size();
  g.matrix.assign(d * d, cd(0.0));
  for (std::size_t i = 0; i < d; ++i) g.matrix[i * d + i] = diag[i];
  return g;
}

// First-fit packing of gates into sublayers with disjoint targets,
// preserving scan order inside each sublayer.
std::vector<std::vector<Gate>> pack_disjoint(std::vector<Gate> gates, int width) {
  std::vector<std::vector<Gate>> layers;
  std::vector<std::vector<char>> used;
  for (auto& g : gates) {
    std::size_t slot = layers.size();
    for (std::size_t l = 0; l < layers.size(); ++l) {
      bool free_slot = true;
      for (int t : g.targets)
        if (used[l][static_cast<std::size_t>(t)]) {
          free_slot = false;
          break;
        }
      if (free_slot) {
        slot = l;
        break;
      }
    }
    if (slot == layers.size()) {
      layers.emplace_back();
      used.emplace_back(static_cast<std::size_t>(width), 0);
    }
    for (int t : g.targets) used[slot][static_cast<std::size_t>(t)] = 1;
    layers[slot].push_back(std::move(g));
  }
  return layers;
}

}  // namespace

void validate(const LatticeSpec& spec) {
  if (spec.levels < 2) fail("BadDimensions", "levels must be at least 2");
  const int width = lattice_width(spec);
  if (width < 1) fail("BadDimensions", "lattice has no circuit qubits");
  if (spec.boundary.kind == Boundary::Kind::Fixed) {
    if (static_cast<int>(spec.boundary.left.size()) != width ||
        static_cast<int>(spec.boundary.right.size()) != width)
      fail("BadDimensions", "fixed boundary strings must have length " +
                                std::to_string(width));
    for (int s : spec.boundary.left)
      if (s < 0 || s >= spec.levels) fail("IndexOutOfRange", "boundary value out of range");
    for (int s : spec.boundary.right)
      if (s < 0 || s >= spec.levels) fail("IndexOutOfRange", "boundary value out of range");
  }
  const int q = spec.levels;
  switch (spec.family) {
    case LatticeSpec::Family::Vertex: {
      const auto& v = spec.vertex;
      if (v.width < 2 || v.depth < 1) fail("BadDimensions", "vertex lattice too small");
      const int want = vertex_gate_count(v.width, v.depth);
      if (static_cast<int>(v.gates.size()) != want)
        fail("BadCouplingCount", "expected " + std::to_string(want) + " vertex tables");
      for (const auto& t : v.gates) check_table(t, q, 4, "vertex");
      break;
    }
    case LatticeSpec::Family::Edge: {
      const auto& e = spec.edge;
      if (e.sites < 1 || e.columns < 1) fail("BadDimensions", "edge lattice too small");
      const int gaps = periodic_time(spec) ? e.columns : e.columns - 1;
      if (static_cast<int>(e.horizontal.size()) != gaps * e.sites)
        fail("BadCouplingCount", "expected " + std::to_string(gaps * e.sites) +
                                     " horizontal tables");
      if (static_cast<int>(e.vertical.size()) != e.columns * (e.sites - 1))
        fail("BadCouplingCount",
             "expected " + std::to_string(e.columns * (e.sites - 1)) + " vertical tables");
      for (const auto& t : e.horizontal) check_table(t, q, 2, "horizontal");
      for (const auto& t : e.vertical) check_table(t, q, 2, "vertical");
      break;
    }
    case LatticeSpec::Family::Lgt: {
      const auto& l = spec.lgt;
      if (q != 2) fail("BadDimensions", "gauge lattices use two-level variables");
      if (l.steps < 1 || l.sx < 1 || l.sy < 1) fail("BadDimensions", "gauge lattice too small");
      if (l.spatial_periodic && (l.sx < 2 || l.sy < 2))
        fail("BadDimensions", "periodic slices need extent at least 2");
      const int E = lgt_edge_count(l);
      const int P = lgt_plaquette_count(l);
      const int gaps = periodic_time(spec) ? l.steps : l.steps - 1;
      const int pslices = gaps;  // final slice carries no plaquette layer
      if (static_cast<int>(l.temporal.size()) != gaps * E)
        fail("BadCouplingCount", "expected " + std::to_string(gaps * E) + " temporal tables");
      if (static_cast<int>(l.plaquette.size()) != pslices * P)
        fail("BadCouplingCount",
             "expected " + std::to_string(pslices * P) + " plaquette tables");
      for (const auto& t : l.temporal) check_table(t, q, 2, "temporal");
      for (const auto& t : l.plaquette) check_table(t, q, 4, "plaquette");
      break;
    }
  }
}

Circuit vertex_to_circuit(const LatticeSpec& spec) {
  validate(spec);
  if (spec.family != LatticeSpec::Family::Vertex) fail("BadDimensions", "not a vertex lattice");
  const auto& v = spec.vertex;
  Circuit c;
  c.width = v.width;
  c.levels = spec.levels;
  c.boundary = spec.boundary;
  std::size_t next = 0;
  for (int d = 0; d < v.depth; ++d) {
    std::vector<Gate> layer;
    const int start = d % 2;
    for (int i = start; i + 1 < v.width; i += 2) {
      Gate g;
      g.targets = {i, i + 1};
      g.matrix = weight_entries(v.gates[next++], spec.beta);
      layer.push_back(std::move(g));
    }
    c.layers.push_back(std::move(layer));
  }
  return c;
}

Circuit edge_to_circuit(const LatticeSpec& spec) {
  validate(spec);
  if (spec.family != LatticeSpec::Family::Edge) fail("BadDimensions", "not an edge lattice");
  const auto& e = spec.edge;
  Circuit c;
  c.width = e.sites;
  c.levels = spec.levels;
  c.boundary = spec.boundary;
  const int gaps = periodic_time(spec) ? e.columns : e.columns - 1;

  auto push_vertical = [&](int t) {
    // in-column diagonal pair gates, split into two disjoint sublayers
    for (int par = 0; par < 2; ++par) {
      std::vector<Gate> layer;
      for (int r = par; r + 1 < e.sites; r += 2) {
        const auto& tab = e.vertical[static_cast<std::size_t>(t * (e.sites - 1) + r)];
        layer.push_back(diagonal_gate({r, r + 1}, weight_entries(tab, spec.beta)));
      }
      if (!layer.empty()) c.layers.push_back(std::move(layer));
    }
  };
  auto push_horizontal = [&](int t) {
    std::vector<Gate> layer;
    for (int r = 0; r < e.sites; ++r) {
      Gate g;
      g.targets = {r};
      g.matrix = weight_entries(e.horizontal[static_cast<std::size_t>(t * e.sites + r)],
                                spec.beta);
      layer.push_back(std::move(g));
    }
    c.layers.push_back(std::move(layer));
  };

  for (int t = 0; t < gaps; ++t) {
    push_vertical(t);
    push_horizontal(t);
  }
  if (!periodic_time(spec)) push_vertical(e.columns - 1);
  return c;
}

Circuit lgt_to_circuit(const LatticeSpec& spec) {
  validate(spec);
  if (spec.family != LatticeSpec::Family::Lgt) fail("BadDimensions", "not a gauge lattice");
  const auto& l = spec.lgt;
  Circuit c;
  c.width = lgt_edge_count(l);
  c.levels = spec.levels;
  c.boundary = spec.boundary;
  const auto plaqs = lgt_plaquettes(l);
  const int E = c.width;
  const int P = static_cast<int>(plaqs.size());
  const int gaps = periodic_time(spec) ? l.steps : l.steps - 1;

  for (int t = 0; t < gaps; ++t) {
    std::vector<Gate> pgates;
    for (int p = 0; p < P; ++p) {
      const auto& tab = l.plaquette[static_cast<std::size_t>(t * P + p)];
      pgates.push_back(diagonal_gate({plaqs[static_cast<std::size_t>(p)][0],
                                      plaqs[static_cast<std::size_t>(p)][1],
                                      plaqs[static_cast<std::size_t>(p)][2],
                                      plaqs[static_cast<std::size_t>(p)][3]},
                                     weight_entries(tab, spec.beta)));
    }
    for (auto& sub : pack_disjoint(std::move(pgates), E)) c.layers.push_back(std::move(sub));
    std::vector<Gate> tlayer;
    for (int e = 0; e < E; ++e) {
      Gate g;
      g.targets = {e};
      g.matrix = weight_entries(l.temporal[static_cast<std::size_t>(t * E + e)], spec.beta);
      tlayer.push_back(std::move(g));
    }
    c.layers.push_back(std::move(tlayer));
  }
  return c;
}

Circuit lattice_to_circuit(const LatticeSpec& spec) {
  switch (spec.family) {
    case LatticeSpec::Family::Vertex:
      return vertex_to_circuit(spec);
    case LatticeSpec::Family::Edge:
      return edge_to_circuit(spec);
    case LatticeSpec::Family::Lgt:
      return lgt_to_circuit(spec);
  }
  fail("BadDimensions", "unknown lattice family");
}

namespace {

SpinModel edge_lattice_model(const LatticeSpec& spec) {
  const auto& e = spec.edge;
  const int n = e.sites, T = e.columns;
  SpinModel m;
  m.num_vars = n * T;
  m.levels = spec.levels;
  m.beta = spec.beta;
  auto var = [&](int r, int t) { return t * n + r; };
  const int gaps = periodic_time(spec) ? T : T - 1;
  for (int t = 0; t < T; ++t)
    for (int r = 0; r + 1 < n; ++r)
      m.interactions.push_back(table_interaction(
          {var(r, t), var(r + 1, t)}, e.vertical[static_cast<std::size_t>(t * (n - 1) + r)],
          "edge-vertical"));
  for (int t = 0; t < gaps; ++t)
    for (int r = 0; r < n; ++r)
      m.interactions.push_back(table_interaction(
          {var(r, (t + 1) % T), var(r, t)},
          e.horizontal[static_cast<std::size_t>(t * n + r)], "edge-horizontal"));
  if (spec.boundary.kind == Boundary::Kind::Fixed) {
    for (int r = 0; r < n; ++r) {
      m.interactions.push_back(
          clamp_interaction(var(r, 0), spec.boundary.right[static_cast<std::size_t>(r)],
                            spec.levels));
      m.interactions.push_back(
          clamp_interaction(var(r, T - 1), spec.boundary.left[static_cast<std::size_t>(r)],
                            spec.levels));
    }
  }
  return m;
}

SpinModel lgt_lattice_model(const LatticeSpec& spec) {
  const auto& l = spec.lgt;
  const int E = lgt_edge_count(l);
  const auto plaqs = lgt_plaquettes(l);
  const int P = static_cast<int>(plaqs.size());
  SpinModel m;
  m.num_vars = E * l.steps;
  m.levels = spec.levels;
  m.beta = spec.beta;
  auto var = [&](int e, int t) { return t * E + e; };
  const int gaps = periodic_time(spec) ? l.steps : l.steps - 1;
  for (int t = 0; t < gaps; ++t)
    for (int p = 0; p < P; ++p) {
      const auto& pe = plaqs[static_cast<std::size_t>(p)];
      m.interactions.push_back(table_interaction(
          {var(pe[0], t), var(pe[1], t), var(pe[2], t), var(pe[3], t)},
          l.plaquette[static_cast<std::size_t>(t * P + p)], "plaquette-space"));
    }
  for (int t = 0; t < gaps; ++t)
    for (int e = 0; e < E; ++e)
      m.interactions.push_back(table_interaction(
          {var(e, (t + 1) % l.steps), var(e, t)},
          l.temporal[static_cast<std::size_t>(t * E + e)], "plaquette-time"));
  if (spec.boundary.kind == Boundary::Kind::Fixed) {
    for (int e = 0; e < E; ++e) {
      m.interactions.push_back(
          clamp_interaction(var(e, 0), spec.boundary.right[static_cast<std::size_t>(e)],
                            spec.levels));
      m.interactions.push_back(clamp_interaction(
          var(e, l.steps - 1), spec.boundary.left[static_cast<std::size_t>(e)], spec.levels));
    }
  }
  return m;
}

SpinModel vertex_lattice_model(const LatticeSpec& spec) {
  const auto& v = spec.vertex;
  SpinModel m;
  m.levels = spec.levels;
  m.beta = spec.beta;

  // variables live on wire segments; each gate cuts both its wires
  std::vector<int> cur(static_cast<std::size_t>(v.width));
  std::iota(cur.begin(), cur.end(), 0);
  int next = v.width;
  std::size_t g = 0;
  for (int d = 0; d < v.depth; ++d) {
    const int start = d % 2;
    for (int i = start; i + 1 < v.width; i += 2) {
      const int in_i = cur[static_cast<std::size_t>(i)];
      const int in_j = cur[static_cast<std::size_t>(i + 1)];
      const int out_i = next++;
      const int out_j = next++;
      m.interactions.push_back(
          table_interaction({out_i, out_j, in_i, in_j}, v.gates[g++], "vertex"));
      cur[static_cast<std::size_t>(i)] = out_i;
      cur[static_cast<std::size_t>(i + 1)] = out_j;
    }
  }
  m.num_vars = next;

  if (spec.boundary.kind == Boundary::Kind::Fixed) {
    for (int w = 0; w < v.width; ++w) {
      m.interactions.push_back(
          clamp_interaction(w, spec.boundary.right[static_cast<std::size_t>(w)], spec.levels));
      m.interactions.push_back(clamp_interaction(
          cur[static_cast<std::size_t>(w)], spec.boundary.left[static_cast<std::size_t>(w)],
          spec.levels));
    }
  } else if (spec.boundary.kind == Boundary::Kind::Periodic) {
    // identify each wire's output segment with its input segment
    std::vector<int> remap(static_cast<std::size_t>(next));
    std::iota(remap.begin(), remap.end(), 0);
    for (int w = 0; w < v.width; ++w) remap[static_cast<std::size_t>(cur[w])] = w;
    std::vector<int> compact(static_cast<std::size_t>(next), -1);
    int nv = 0;
    for (int id = 0; id < next; ++id)
      if (remap[static_cast<std::size_t>(id)] == id) compact[static_cast<std::size_t>(id)] = nv++;
    for (auto& it : m.interactions)
      for (int& var : it.vars)
        var = compact[static_cast<std::size_t>(remap[static_cast<std::size_t>(var)])];
    m.num_vars = nv;
  }
  return m;
}

}  // namespace

SpinModel lattice_to_model(const LatticeSpec& spec) {
  validate(spec);
  switch (spec.family) {
    case LatticeSpec::Family::Vertex:
      return vertex_lattice_model(spec);
    case LatticeSpec::Family::Edge:
      return edge_lattice_model(spec);
    case LatticeSpec::Family::Lgt:
      return lgt_lattice_model(spec);
  }
  fail("BadDimensions", "unknown lattice family");
}

}  // namespace zspin
