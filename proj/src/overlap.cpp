#include "zspin/overlap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "zspin/parallel.hpp"

namespace zspin {

namespace {

void check_dense_cap(std::size_t dim, std::size_t cap) {
  if (dim > cap)
    fail("TooLarge", "dense state needs " + std::to_string(dim) +
                         " amplitudes, cap is " + std::to_string(cap));
}

}  // namespace

StateVector phi_state(const SpinModel& m, std::size_t dense_cap, double max_bits) {
  validate(m);
  const double bits = m.num_vars * std::log2(static_cast<double>(m.levels));
  if (bits > max_bits + 1e-9)
    fail("TooLarge", "enumeration over " + std::to_string(bits) + " bits exceeds cap");

  StateVector sv;
  std::size_t dim = 1;
  for (std::size_t i = 0; i < m.interactions.size(); ++i) {
    const std::size_t d = qudit_dim(m.interactions[i], m.levels);
    check_dense_cap(dim * d, dense_cap);
    dim *= d;
    sv.dims.push_back(d);
    sv.labels.push_back(static_cast<int>(i));
  }
  sv.amps.assign(dim, cd(0.0));

  const int n = m.num_vars;
  const int q = m.levels;
  Configuration cfg(n, 0);
  const std::size_t total = ipow(q, n);
  for (std::size_t r = 0; r < total; ++r) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < m.interactions.size(); ++i)
      idx = idx * sv.dims[i] + qudit_index(m.interactions[i], cfg, q);
    sv.amps[idx] += cd(1.0);
    for (int v = n - 1; v >= 0; --v) {
      if (++cfg[v] < q) break;
      cfg[v] = 0;
    }
  }
  return sv;
}

ProductCovector alpha_covector(const SpinModel& m) {
  validate(m);
  const auto tables = boltzmann_tables(m);
  ProductCovector a;
  a.coeffs.reserve(m.interactions.size());
  const int q = m.levels;
  for (std::size_t i = 0; i < m.interactions.size(); ++i) {
    const auto& it = m.interactions[i];
    if (it.qudit_map == QuditMap::Difference) {
      // coefficient for digit d taken at the representative (d, 0); the full
      // table must factor through the difference
      std::vector<cd> c(static_cast<std::size_t>(q));
      for (int d = 0; d < q; ++d) c[d] = tables[i][static_cast<std::size_t>(d) * q];
      for (int s0 = 0; s0 < q; ++s0)
        for (int s1 = 0; s1 < q; ++s1) {
          int d = (s0 - s1) % q;
          if (d < 0) d += q;
          if (tables[i][static_cast<std::size_t>(s0) * q + s1] != c[d])
            fail("NotFactorable",
                 "interaction " + std::to_string(i) +
                     " does not factor through its difference digit");
        }
      a.coeffs.push_back(std::move(c));
    } else {
      a.coeffs.push_back(tables[i]);
    }
  }
  return a;
}

namespace {

// Contract qudit `pos` of sv with the coefficient vector c.
StateVector contract_at(const StateVector& sv, std::size_t pos, const std::vector<cd>& c) {
  const std::size_t d = sv.dims[pos];
  if (c.size() != d)
    fail("DimensionMismatch", "coefficient vector length " + std::to_string(c.size()) +
                                  " != qudit dimension " + std::to_string(d));
  std::size_t left = 1, right = 1;
  for (std::size_t i = 0; i < pos; ++i) left *= sv.dims[i];
  for (std::size_t i = pos + 1; i < sv.dims.size(); ++i) right *= sv.dims[i];

  StateVector out;
  out.dims = sv.dims;
  out.dims.erase(out.dims.begin() + static_cast<std::ptrdiff_t>(pos));
  out.labels = sv.labels;
  out.labels.erase(out.labels.begin() + static_cast<std::ptrdiff_t>(pos));
  out.amps.assign(left * right, cd(0.0));

  const std::size_t n_out = left * right;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t o = 0; o < static_cast<std::ptrdiff_t>(n_out); ++o) {
    const std::size_t l = static_cast<std::size_t>(o) / right;
    const std::size_t r = static_cast<std::size_t>(o) % right;
    cd s = 0;
    const std::size_t base = (l * d) * right + r;
    for (std::size_t k = 0; k < d; ++k) s += c[k] * sv.amps[base + k * right];
    out.amps[static_cast<std::size_t>(o)] = s;
  }
  return out;
}

}  // namespace

StateVector project(const StateVector& phi, const std::vector<Projection>& ps) {
  std::vector<Projection> sel = ps;
  std::sort(sel.begin(), sel.end(),
            [](const Projection& a, const Projection& b) { return a.qudit > b.qudit; });
  for (std::size_t i = 0; i + 1 < sel.size(); ++i)
    if (sel[i].qudit == sel[i + 1].qudit)
      fail("IndexOutOfRange", "duplicate qudit in projection");
  StateVector cur = phi;
  for (const auto& p : sel) {
    if (p.qudit < 0 || static_cast<std::size_t>(p.qudit) >= cur.dims.size())
      fail("IndexOutOfRange", "projection qudit " + std::to_string(p.qudit));
    cur = contract_at(cur, static_cast<std::size_t>(p.qudit), p.coeffs);
  }
  return cur;
}

cd pair_state(const ProductCovector& a, const StateVector& phi) {
  if (a.coeffs.size() != phi.dims.size())
    fail("DimensionMismatch", "covector has " + std::to_string(a.coeffs.size()) +
                                  " qudits, state has " + std::to_string(phi.dims.size()));
  StateVector cur = phi;
  for (std::size_t k = phi.dims.size(); k-- > 0;)
    cur = contract_at(cur, k, a.coeffs[k]);
  return cur.amps.at(0);
}

cd pair_state_direct(const ProductCovector& a, const StateVector& phi) {
  const std::size_t nq = phi.dims.size();
  if (a.coeffs.size() != nq) fail("DimensionMismatch", "qudit count mismatch");
  for (std::size_t k = 0; k < nq; ++k)
    if (a.coeffs[k].size() != phi.dims[k])
      fail("DimensionMismatch", "qudit " + std::to_string(k) + " dimension mismatch");
  const std::size_t total = phi.total_dim();
  return detail::ordered_chunk_sum(total, [&](std::size_t begin, std::size_t end) {
    cd sum = 0;
    for (std::size_t idx = begin; idx < end; ++idx) {
      cd w = phi.amps[idx];
      std::size_t rest = idx;
      for (std::size_t k = nq; k-- > 0;) {
        w *= a.coeffs[k][rest % phi.dims[k]];
        rest /= phi.dims[k];
      }
      sum += w;
    }
    return sum;
  });
}

bool check_stabilizers(const SpinModel& m, const StateVector& phi) {
  validate(m);
  if (m.levels != 2) fail("WrongFamily", "stabilizer check needs two-level variables");
  if (phi.dims.size() != m.interactions.size())
    fail("DimensionMismatch", "state does not match the model's interaction list");

  // Map vertices to their field qudit and collect edges; require the
  // edge+field form with exactly one field per vertex.
  std::vector<int> field_qudit(static_cast<std::size_t>(m.num_vars), -1);
  struct Edge {
    int a, b, qudit;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m.interactions.size(); ++i) {
    const auto& it = m.interactions[i];
    if (it.tag == "ising" && it.vars.size() == 2) {
      edges.push_back({it.vars[0], it.vars[1], static_cast<int>(i)});
    } else if (it.tag == "field" && it.vars.size() == 1) {
      if (field_qudit[static_cast<std::size_t>(it.vars[0])] != -1)
        fail("WrongFamily", "vertex " + std::to_string(it.vars[0]) + " has two field terms");
      field_qudit[static_cast<std::size_t>(it.vars[0])] = static_cast<int>(i);
    } else {
      fail("WrongFamily", "interaction " + std::to_string(i) + " is not edge or field");
    }
  }
  for (int v = 0; v < m.num_vars; ++v)
    if (field_qudit[static_cast<std::size_t>(v)] == -1)
      fail("WrongFamily", "vertex " + std::to_string(v) + " has no field term");

  const std::size_t nq = phi.dims.size();
  for (std::size_t d : phi.dims)
    if (d != 2) fail("WrongFamily", "all qudits must be two-dimensional");
  auto bit = [&](std::size_t qudit) { return std::size_t(1) << (nq - 1 - qudit); };
  const std::size_t dim = phi.total_dim();

  // Flip generators: X on the vertex qudit and every incident edge qudit.
  for (int v = 0; v < m.num_vars; ++v) {
    std::size_t mask = bit(static_cast<std::size_t>(field_qudit[static_cast<std::size_t>(v)]));
    for (const auto& e : edges)
      if (e.a == v || e.b == v) mask ^= bit(static_cast<std::size_t>(e.qudit));
    for (std::size_t i = 0; i < dim; ++i)
      if (phi.amps[i] != phi.amps[i ^ mask]) return false;
  }
  // Phase generators: Z on the edge qudit and both endpoint qudits. XOR so a
  // self-loop's two endpoint factors cancel.
  for (const auto& e : edges) {
    const std::size_t mask =
        bit(static_cast<std::size_t>(e.qudit)) ^
        bit(static_cast<std::size_t>(field_qudit[static_cast<std::size_t>(e.a)])) ^
        bit(static_cast<std::size_t>(field_qudit[static_cast<std::size_t>(e.b)]));
    for (std::size_t i = 0; i < dim; ++i) {
      if ((std::popcount(i & mask) & 1) && phi.amps[i] != cd(0.0)) return false;
    }
  }
  return true;
}

}  // namespace zspin
