#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "zspin/families.hpp"
#include "zspin/rewrite.hpp"
#include "zspin/rng.hpp"

using namespace zspin;

namespace {

double rel_err(cd got, cd want) { return std::abs(got - want) / std::abs(want); }

SpinModel with_constraint_at(const SpinModel& m, int index) {
  SpinModel out = m;
  const auto& it = m.interactions[static_cast<std::size_t>(index)];
  out.interactions[static_cast<std::size_t>(index)] =
      make_equal_constraint(it.vars[0], it.vars[1], m.levels);
  return out;
}

}  // namespace

TEST_CASE("merging a path edge contracts the graph") {
  GraphModelParams p;
  p.n = 3;
  p.edges.push_back({0, 1, cd(1, 0)});
  p.edges.push_back({1, 2, cd(0.5, 0)});
  const SpinModel m = make_ising_graph(p);
  const SpinModel merged = merge(m, 0);
  CHECK(merged.num_vars == 2);
  REQUIRE(merged.interactions.size() == 1);
  CHECK(merged.interactions[0].vars == std::vector<int>({0, 1}));
}

TEST_CASE("merging a hard equality keeps Z") {
  SpinModel m;
  m.num_vars = 2;
  m.beta = cd(1, 0);
  m.interactions.push_back(make_equal_constraint(0, 1, 2));
  const SpinModel merged = merge(m, 0);
  CHECK(merged.num_vars == 1);
  CHECK(partition_function_exact(merged) == cd(2, 0));
  CHECK(partition_function_exact(merged) == partition_function_exact(m));
}

TEST_CASE("merging a triangle edge doubles the remaining edge") {
  GraphModelParams p;
  p.n = 3;
  p.beta = cd(1, 0);
  p.edges.push_back({0, 1, cd(1, 0)});
  p.edges.push_back({1, 2, cd(0.7, 0)});
  p.edges.push_back({0, 2, cd(-0.3, 0)});
  const SpinModel m = make_ising_graph(p);
  const SpinModel merged = merge(m, 0);
  CHECK(merged.num_vars == 2);
  CHECK(merged.interactions.size() == 2);  // parallel pair couplings
  CHECK(rel_err(partition_function_exact(merged),
                partition_function_exact(with_constraint_at(m, 0))) < 1e-12);
}

TEST_CASE("merge preserves Z of the constrained model on random instances") {
  auto eng = substream(11, 0);
  int done = 0;
  while (done < 30) {
    const SpinModel m = oracle::random_ising_model(eng, 6, /*complex=*/true);
    std::vector<int> mergeable;
    for (std::size_t i = 0; i < m.interactions.size(); ++i)
      if (m.interactions[i].tag == "ising") mergeable.push_back(static_cast<int>(i));
    if (mergeable.empty()) continue;
    const int pick = mergeable[zspin::uniform_below(eng, mergeable.size())];
    const cd want = partition_function_exact(with_constraint_at(m, pick));
    const cd got = partition_function_exact(merge(m, pick));
    CHECK(rel_err(got, want) < 1e-12);
    ++done;
  }
}

TEST_CASE("merging a three-level potts edge matches its constrained model") {
  auto eng = substream(14, 0);
  GraphModelParams p;
  p.n = 4;
  p.q = 3;
  p.beta = oracle::random_complex(eng, 0.6);
  p.edges.push_back({0, 1, oracle::random_complex(eng, 0.8)});
  p.edges.push_back({1, 2, oracle::random_complex(eng, 0.8)});
  p.edges.push_back({2, 3, oracle::random_complex(eng, 0.8)});
  const SpinModel m = make_potts_graph(p);
  const SpinModel merged = merge(m, 1);
  CHECK(merged.num_vars == 3);
  CHECK(rel_err(partition_function_exact(merged),
                partition_function_exact(with_constraint_at(m, 1))) < 1e-12);
}

TEST_CASE("merge rejects non-equality interactions") {
  SpinModel m;
  m.num_vars = 2;
  m.interactions.push_back(make_field(0, cd(1, 0)));
  CHECK_THROWS_AS(merge(m, 0), Error);
  try {
    merge(m, 0);
  } catch (const Error& e) {
    CHECK(e.kind() == "NotMergeable");
  }
}

TEST_CASE("deleting an interaction frees its coupling") {
  GraphModelParams p;
  p.n = 2;
  p.beta = cd(1, 0);
  p.edges.push_back({0, 1, cd(1, 0)});
  const SpinModel m = make_ising_graph(p);
  CHECK(partition_function_exact(delete_interaction(m, 0)) == cd(4, 0));

  SpinModel f;
  f.num_vars = 1;
  f.interactions.push_back(make_field(0, cd(2, 0)));
  CHECK(partition_function_exact(delete_interaction(f, 0)) == cd(2, 0));
}

TEST_CASE("deletion equals zeroing the energies") {
  auto eng = substream(12, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const SpinModel m = oracle::random_ising_model(eng, 6, /*complex=*/true);
    const int pick = static_cast<int>(zspin::uniform_below(eng, m.interactions.size()));
    SpinModel zeroed = m;
    for (cd& e : zeroed.interactions[static_cast<std::size_t>(pick)].table) e = 0;
    CHECK(rel_err(partition_function_exact(delete_interaction(m, pick)),
                  partition_function_exact(zeroed)) < 1e-12);
  }
}

TEST_CASE("clique specialization pays a free factor per surplus vertex") {
  GraphModelParams p;
  p.n = 2;
  p.beta = cd(1, 0);
  p.edges.push_back({0, 1, cd(1, 0)});
  const SpinModel target = make_ising_graph(p);
  const SpinModel bigger = specialize_clique(3, target);
  CHECK(bigger.num_vars == 3);
  const cd zt = partition_function_exact(target);
  CHECK(rel_err(partition_function_exact(bigger), 2.0 * zt) < 1e-12);
  CHECK(rel_err(zt, cd(2 * std::exp(1.0) + 2 * std::exp(-1.0), 0)) < 1e-12);

  // same size: the embedding is the identity
  const SpinModel same = specialize_clique(2, target);
  CHECK(partition_function_exact(same) == zt);
}

TEST_CASE("clique specialization on a random triangle") {
  auto eng = substream(13, 0);
  GraphModelParams p;
  p.n = 3;
  p.beta = cd(1, 0);
  p.edges.push_back({0, 1, oracle::random_complex(eng, 1.0)});
  p.edges.push_back({1, 2, oracle::random_complex(eng, 1.0)});
  p.edges.push_back({0, 2, oracle::random_complex(eng, 1.0)});
  const SpinModel target = make_ising_graph(p);
  const SpinModel bigger = specialize_clique(4, target);
  CHECK(rel_err(partition_function_exact(bigger) / partition_function_exact(target),
                cd(2, 0)) < 1e-12);
}

TEST_CASE("clique specialization rejects too-small hosts and parallel edges") {
  GraphModelParams p;
  p.n = 3;
  p.edges.push_back({0, 1, cd(1, 0)});
  const SpinModel target = make_ising_graph(p);
  CHECK_THROWS_AS(specialize_clique(2, target), Error);

  GraphModelParams dup = p;
  dup.edges.push_back({1, 0, cd(0.5, 0)});
  CHECK_THROWS_AS(specialize_clique(4, make_ising_graph(dup)), Error);
}
