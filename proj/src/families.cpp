#include "zspin/families.hpp"

namespace zspin {

namespace {

void check_graph(const GraphModelParams& p) {
  if (p.n < 1) fail("BadDimensions", "graph needs at least one vertex");
  for (const auto& e : p.edges)
    if (e.a < 0 || e.a >= p.n || e.b < 0 || e.b >= p.n)
      fail("IndexOutOfRange", "edge endpoint out of range");
  for (const auto& f : p.fields)
    if (f.first < 0 || f.first >= p.n) fail("IndexOutOfRange", "field vertex out of range");
}

}  // namespace

SpinModel make_ising_graph(const GraphModelParams& p) {
  check_graph(p);
  SpinModel m;
  m.num_vars = p.n;
  m.levels = 2;
  m.beta = p.beta;
  for (const auto& e : p.edges) m.interactions.push_back(make_ising_edge(e.a, e.b, e.coupling));
  for (const auto& f : p.fields) m.interactions.push_back(make_field(f.first, f.second));
  return m;
}

SpinModel make_potts_graph(const GraphModelParams& p) {
  check_graph(p);
  if (p.q < 2) fail("BadDimensions", "levels must be at least 2");
  SpinModel m;
  m.num_vars = p.n;
  m.levels = p.q;
  m.beta = p.beta;
  for (const auto& e : p.edges)
    m.interactions.push_back(make_potts_edge(e.a, e.b, e.coupling, p.q));
  for (const auto& f : p.fields)
    m.interactions.push_back(make_potts_field(f.first, f.second, p.q));
  return m;
}

}  // namespace zspin
