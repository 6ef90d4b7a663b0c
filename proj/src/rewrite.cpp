#include "zspin/rewrite.hpp"

#include <algorithm>
#include <set>

namespace zspin {

SpinModel merge(const SpinModel& m, int interaction_index) {
  validate(m);
  if (interaction_index < 0 ||
      static_cast<std::size_t>(interaction_index) >= m.interactions.size())
    fail("IndexOutOfRange", "interaction index " + std::to_string(interaction_index));
  const auto& it = m.interactions[static_cast<std::size_t>(interaction_index)];
  const bool equality_type =
      it.tag == "ising" || it.tag == "constraint-equal" ||
      (it.tag == "potts" && it.vars.size() == 2);
  if (!equality_type || it.vars.size() != 2 || it.vars[0] == it.vars[1])
    fail("NotMergeable", "interaction " + std::to_string(interaction_index) +
                             " is not a two-body equality type on distinct variables");

  const int keep = std::min(it.vars[0], it.vars[1]);
  const int drop = std::max(it.vars[0], it.vars[1]);

  SpinModel out;
  out.num_vars = m.num_vars - 1;
  out.levels = m.levels;
  out.beta = m.beta;
  auto remap = [&](int v) {
    if (v == drop) return keep;
    return v > drop ? v - 1 : v;
  };
  for (std::size_t i = 0; i < m.interactions.size(); ++i) {
    if (static_cast<int>(i) == interaction_index) continue;
    Interaction ni = m.interactions[i];
    for (int& v : ni.vars) v = remap(v);
    out.interactions.push_back(std::move(ni));
  }
  return out;
}

SpinModel delete_interaction(const SpinModel& m, int interaction_index) {
  validate(m);
  if (interaction_index < 0 ||
      static_cast<std::size_t>(interaction_index) >= m.interactions.size())
    fail("IndexOutOfRange", "interaction index " + std::to_string(interaction_index));
  SpinModel out = m;
  out.interactions.erase(out.interactions.begin() + interaction_index);
  return out;
}

SpinModel specialize_clique(int n, const SpinModel& target) {
  validate(target);
  if (target.levels != 2)
    fail("WrongFamily", "clique specialization applies to two-level edge models");
  std::set<std::pair<int, int>> seen;
  for (const auto& it : target.interactions) {
    if (it.tag == "ising" && it.vars.size() == 2 && it.vars[0] != it.vars[1]) {
      auto key = std::minmax(it.vars[0], it.vars[1]);
      if (!seen.insert(key).second)
        fail("WrongFamily", "target graph has parallel edges");
    } else if (it.tag == "field" && it.vars.size() == 1) {
      // fields ride along unchanged
    } else {
      fail("WrongFamily", "target is not an edge+field model on a simple graph");
    }
  }
  if (target.num_vars > n)
    fail("TargetTooLarge", "target has " + std::to_string(target.num_vars) +
                               " vertices, clique has " + std::to_string(n));
  SpinModel out = target;
  out.num_vars = n;
  return out;
}

}  // namespace zspin
