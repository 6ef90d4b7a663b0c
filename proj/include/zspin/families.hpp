#pragma once

#include "zspin/model.hpp"

namespace zspin {

/// Explicit-graph model parameters shared by the Ising and Potts builders.
struct GraphModelParams {
  int n = 0;
  int q = 2;
  cd beta{1.0, 0.0};
  struct Edge {
    int a = 0, b = 0;
    cd coupling{0.0};
  };
  std::vector<Edge> edges;
  std::vector<std::pair<int, cd>> fields;  // (vertex, field strength)
};

/// Two-level model with pair couplings -J*(-1)^(s_a+s_b) and fields
/// -h*(-1)^(s_a); one interaction per edge and per listed field.
SpinModel make_ising_graph(const GraphModelParams& p);

/// q-level model with pair couplings -J*delta(s_a, s_b) and fields
/// -h*delta(s_a, 0).
SpinModel make_potts_graph(const GraphModelParams& p);

}  // namespace zspin
