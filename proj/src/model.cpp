#include "zspin/model.hpp"

#include <algorithm>
#include <cmath>

#include "zspin/parallel.hpp"

namespace zspin {

Interaction make_ising_edge(int a, int b, cd coupling) {
  Interaction it;
  it.vars = {a, b};
  // energy -J*(-1)^(s_a+s_b): -J when aligned, +J otherwise
  it.table = {-coupling, coupling, coupling, -coupling};
  it.qudit_map = QuditMap::Difference;
  it.tag = "ising";
  return it;
}

Interaction make_field(int a, cd h) {
  Interaction it;
  it.vars = {a};
  it.table = {-h, h};
  it.tag = "field";
  return it;
}

Interaction make_potts_edge(int a, int b, cd coupling, int q) {
  Interaction it;
  it.vars = {a, b};
  it.table.assign(static_cast<std::size_t>(q) * q, cd(0.0));
  for (int s = 0; s < q; ++s) it.table[static_cast<std::size_t>(s) * q + s] = -coupling;
  it.tag = "potts";
  return it;
}

Interaction make_potts_field(int a, cd h, int q) {
  Interaction it;
  it.vars = {a};
  it.table.assign(static_cast<std::size_t>(q), cd(0.0));
  it.table[0] = -h;  // energy -h when the spin sits in state 0
  it.tag = "potts";
  return it;
}

Interaction make_equal_constraint(int a, int b, int q) {
  Interaction it;
  it.vars = {a, b};
  it.table.assign(static_cast<std::size_t>(q) * q, cd(0.0));
  for (int s = 0; s < q; ++s) it.table[static_cast<std::size_t>(s) * q + s] = cd(1.0);
  it.kind = TableKind::Weight;
  it.qudit_map = QuditMap::Difference;
  it.tag = "constraint-equal";
  return it;
}

Interaction make_energy_table(std::vector<int> vars, std::vector<cd> energies,
                              std::string tag) {
  Interaction it;
  it.vars = std::move(vars);
  it.table = std::move(energies);
  it.tag = std::move(tag);
  return it;
}

Interaction make_weight_table(std::vector<int> vars, std::vector<cd> weights,
                              std::string tag) {
  Interaction it;
  it.vars = std::move(vars);
  it.table = std::move(weights);
  it.kind = TableKind::Weight;
  it.tag = std::move(tag);
  return it;
}

void validate(const SpinModel& m) {
  if (m.num_vars < 1) fail("BadDimensions", "model needs at least one variable");
  if (m.levels < 2) fail("BadDimensions", "levels must be at least 2");
  for (std::size_t i = 0; i < m.interactions.size(); ++i) {
    const auto& it = m.interactions[i];
    if (it.vars.empty())
      fail("BadDimensions", "interaction " + std::to_string(i) + " has arity 0");
    for (int v : it.vars)
      if (v < 0 || v >= m.num_vars)
        fail("IndexOutOfRange",
             "interaction " + std::to_string(i) + " references variable " +
                 std::to_string(v));
    const std::size_t want = ipow(m.levels, static_cast<int>(it.vars.size()));
    if (it.table.size() != want)
      fail("BadDimensions", "interaction " + std::to_string(i) + " table has " +
                                std::to_string(it.table.size()) + " entries, expected " +
                                std::to_string(want));
    if (it.qudit_map == QuditMap::Difference && it.vars.size() != 2)
      fail("BadDimensions", "difference qudit map requires arity 2");
  }
}

void validate_config(const SpinModel& m, const Configuration& c) {
  if (static_cast<int>(c.size()) != m.num_vars)
    fail("IndexOutOfRange", "configuration length " + std::to_string(c.size()) +
                                " != " + std::to_string(m.num_vars));
  for (int s : c)
    if (s < 0 || s >= m.levels) fail("IndexOutOfRange", "spin value out of range");
}

std::size_t table_index(const Interaction& it, const Configuration& c, int q) {
  std::size_t idx = 0;
  for (int v : it.vars) idx = idx * static_cast<std::size_t>(q) + static_cast<std::size_t>(c[v]);
  return idx;
}

std::size_t qudit_index(const Interaction& it, const Configuration& c, int q) {
  if (it.qudit_map == QuditMap::Difference) {
    int d = (c[it.vars[0]] - c[it.vars[1]]) % q;
    if (d < 0) d += q;
    return static_cast<std::size_t>(d);
  }
  return table_index(it, c, q);
}

std::size_t qudit_dim(const Interaction& it, int q) {
  if (it.qudit_map == QuditMap::Difference) return static_cast<std::size_t>(q);
  return ipow(q, static_cast<int>(it.vars.size()));
}

std::vector<std::vector<cd>> boltzmann_tables(const SpinModel& m) {
  std::vector<std::vector<cd>> out;
  out.reserve(m.interactions.size());
  for (const auto& it : m.interactions) {
    if (it.kind == TableKind::Weight) {
      out.push_back(it.table);
    } else {
      std::vector<cd> w(it.table.size());
      for (std::size_t i = 0; i < it.table.size(); ++i)
        w[i] = std::exp(-m.beta * it.table[i]);
      out.push_back(std::move(w));
    }
  }
  return out;
}

cd evaluate_energy(const SpinModel& m, const Configuration& c) {
  validate(m);
  validate_config(m, c);
  for (const auto& it : m.interactions)
    if (it.kind == TableKind::Weight)
      fail("HardConstraintPresent",
           "model contains weight-valued interactions; use config_weight");
  cd e = 0;
  for (const auto& it : m.interactions) e += it.table[table_index(it, c, m.levels)];
  return e;
}

cd config_weight(const SpinModel& m, const Configuration& c) {
  validate(m);
  validate_config(m, c);
  cd w = 1;
  for (const auto& it : m.interactions) {
    const std::size_t idx = table_index(it, c, m.levels);
    if (it.kind == TableKind::Weight)
      w *= it.table[idx];
    else
      w *= std::exp(-m.beta * it.table[idx]);
  }
  return w;
}

namespace {

void check_enumeration_cap(const SpinModel& m, double max_bits) {
  const double bits = m.num_vars * std::log2(static_cast<double>(m.levels));
  if (bits > max_bits + 1e-9)
    fail("TooLarge", "configuration space needs " + std::to_string(bits) +
                         " bits, cap is " + std::to_string(max_bits));
}

// Depth-first enumeration in lexicographic order (variable 0 slowest). Each
// interaction's weight folds into the running product at the depth of its
// last variable, so a table is read once per prefix instead of once per
// configuration. Subtree sums below a fixed split depth are reduced in
// prefix order, which keeps the value independent of the worker count.
struct EnumPlan {
  int n = 0;
  int q = 0;
  int split_depth = 0;  // prefixes up to here become reduction tasks
  std::vector<std::vector<cd>> tables;
  // per depth, the interactions closing there (all vars <= depth)
  std::vector<std::vector<int>> closers;
};

EnumPlan make_plan(const SpinModel& m) {
  EnumPlan plan;
  plan.n = m.num_vars;
  plan.q = m.levels;
  plan.tables = boltzmann_tables(m);
  plan.closers.assign(static_cast<std::size_t>(plan.n), {});
  for (std::size_t i = 0; i < m.interactions.size(); ++i) {
    int last = 0;
    for (int v : m.interactions[i].vars) last = std::max(last, v);
    plan.closers[static_cast<std::size_t>(last)].push_back(static_cast<int>(i));
  }
  std::size_t prefixes = 1;
  while (plan.split_depth < plan.n && prefixes < 2048) {
    prefixes *= static_cast<std::size_t>(plan.q);
    ++plan.split_depth;
  }
  return plan;
}

cd closing_weight(const SpinModel& m, const EnumPlan& plan, const int* cfg, int depth) {
  cd w = 1;
  for (int i : plan.closers[static_cast<std::size_t>(depth)]) {
    const auto& it = m.interactions[static_cast<std::size_t>(i)];
    std::size_t idx = 0;
    for (int v : it.vars)
      idx = idx * static_cast<std::size_t>(plan.q) + static_cast<std::size_t>(cfg[v]);
    w *= plan.tables[static_cast<std::size_t>(i)][idx];
  }
  return w;
}

cd sum_subtree(const SpinModel& m, const EnumPlan& plan, int* cfg, int depth, cd prefix) {
  cd acc = 0;
  for (int s = 0; s < plan.q; ++s) {
    cfg[depth] = s;
    const cd w = prefix * closing_weight(m, plan, cfg, depth);
    if (depth + 1 == plan.n)
      acc += w;
    else
      acc += sum_subtree(m, plan, cfg, depth + 1, w);
  }
  return acc;
}

template <bool Parallel>
cd enumerate_z(const SpinModel& m, double max_bits) {
  validate(m);
  check_enumeration_cap(m, max_bits);
  const EnumPlan plan = make_plan(m);
  const int n = plan.n;
  const int q = plan.q;
  const int sd = plan.split_depth;
  const std::size_t prefixes = ipow(static_cast<std::size_t>(q), sd);
  std::vector<cd> partial(prefixes);

#pragma omp parallel for schedule(dynamic, 8) if (Parallel)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(prefixes); ++p) {
    std::vector<int> cfg(static_cast<std::size_t>(n), 0);
    std::size_t rest = static_cast<std::size_t>(p);
    for (int d = sd - 1; d >= 0; --d) {
      cfg[static_cast<std::size_t>(d)] = static_cast<int>(rest % static_cast<std::size_t>(q));
      rest /= static_cast<std::size_t>(q);
    }
    cd prefix = 1;
    for (int d = 0; d < sd; ++d) prefix *= closing_weight(m, plan, cfg.data(), d);
    partial[static_cast<std::size_t>(p)] =
        sd == n ? prefix : sum_subtree(m, plan, cfg.data(), sd, prefix);
  }
  cd total = 0;
  for (const cd& p : partial) total += p;
  return total;
}

}  // namespace

cd partition_function_exact(const SpinModel& m, double max_bits) {
  return enumerate_z<true>(m, max_bits);
}

cd partition_function_serial(const SpinModel& m, double max_bits) {
  return enumerate_z<false>(m, max_bits);
}

}  // namespace zspin
