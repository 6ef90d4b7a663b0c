#pragma once

#include <array>
#include <string>
#include <vector>

#include "zspin/circuit.hpp"
#include "zspin/model.hpp"

namespace zspin {

/// One interaction's local table, before a model or circuit is built from it.
struct LocalTable {
  TableKind kind = TableKind::Energy;
  std::vector<cd> entries;  // q^k, row-major, last participant fastest
};

LocalTable ising_pair_table(cd coupling);              // q = 2, arity 2
LocalTable ising_plaquette_table(cd coupling);         // q = 2, arity 4
LocalTable potts_pair_table(cd coupling, int q);       // arity 2 delta coupling
LocalTable six_vertex_table(const std::vector<cd>& w); // arity 4 weights, q = 2

/// Vertex model on a tilted lattice: `width` wires, `depth` brick layers.
/// Layer d holds two-wire interactions on (i, i+1) for i = d mod 2, d mod 2
/// + 2, ...; `gates` lists their tables layer by layer, left to right.
struct VertexLatticeSpec {
  int width = 0;
  int depth = 0;
  std::vector<LocalTable> gates;
};

/// Square-lattice edge model: `sites` rows of spins over `columns` time
/// columns. `horizontal` holds the tables of the time-direction edges
/// (column gap major, then row); `vertical` the in-column edges (column
/// major, then row gap). A periodic boundary adds the wrap-around gap, so
/// horizontal has columns*sites entries instead of (columns-1)*sites.
struct EdgeLatticeSpec {
  int sites = 0;
  int columns = 0;
  std::vector<LocalTable> horizontal;
  std::vector<LocalTable> vertical;
};

/// Cubic-lattice two-level gauge model in the temporal gauge: variables live
/// on the spatial edges of an sx-by-sy slice (periodic torus or open grid),
/// replicated over `steps` time slices. `temporal` holds the two-body tables
/// of the time-direction faces (slice gap major, then edge); `plaquette` the
/// four-body tables of the in-slice faces (slice major, then plaquette).
/// Under a fixed or open time boundary the final slice carries no plaquette
/// layer; a periodic boundary closes both lists around the time circle.
struct LgtLatticeSpec {
  int sx = 0;
  int sy = 0;
  int steps = 0;
  bool spatial_periodic = true;
  std::vector<LocalTable> temporal;
  std::vector<LocalTable> plaquette;
};

struct LatticeSpec {
  enum class Family { Vertex, Edge, Lgt };
  Family family = Family::Edge;
  int levels = 2;
  cd beta{1.0, 0.0};
  Boundary boundary;
  VertexLatticeSpec vertex;
  EdgeLatticeSpec edge;
  LgtLatticeSpec lgt;
};

// Geometry helpers ---------------------------------------------------------

int vertex_layer_gate_count(int width, int layer);
int vertex_gate_count(int width, int depth);
int lgt_edge_count(const LgtLatticeSpec& s);
int lgt_plaquette_count(const LgtLatticeSpec& s);
/// Edge indices (bottom, top, left, right) of each in-slice plaquette.
std::vector<std::array<int, 4>> lgt_plaquettes(const LgtLatticeSpec& s);

/// Number of circuit qubits for a lattice.
int lattice_width(const LatticeSpec& spec);

void validate(const LatticeSpec& spec);

// The two independent evaluation paths ------------------------------------

Circuit vertex_to_circuit(const LatticeSpec& spec);
Circuit edge_to_circuit(const LatticeSpec& spec);
Circuit lgt_to_circuit(const LatticeSpec& spec);
Circuit lattice_to_circuit(const LatticeSpec& spec);

/// The same lattice as a spin model: variables on sites (edge model), wire
/// segments (vertex model) or slice edges (gauge model); fixed boundaries
/// become one-body clamp constraints. Enumerating this model is the oracle
/// the circuit contraction is checked against.
SpinModel lattice_to_model(const LatticeSpec& spec);

}  // namespace zspin
