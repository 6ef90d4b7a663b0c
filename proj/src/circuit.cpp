#include "zspin/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "zspin/parallel.hpp"

namespace zspin {

void validate(const Circuit& c) {
  if (c.width < 1) fail("BadDimensions", "circuit needs at least one qubit");
  if (c.levels < 2) fail("BadDimensions", "levels must be at least 2");
  for (const auto& layer : c.layers) {
    std::vector<char> used(static_cast<std::size_t>(c.width), 0);
    for (const auto& g : layer) {
      if (g.targets.empty()) fail("BadDimensions", "gate with no targets");
      const std::size_t d = ipow(c.levels, static_cast<int>(g.targets.size()));
      if (g.matrix.size() != d * d)
        fail("BadDimensions", "gate matrix size does not match target count");
      for (int t : g.targets) {
        if (t < 0 || t >= c.width) fail("IndexOutOfRange", "gate target out of range");
        if (used[static_cast<std::size_t>(t)])
          fail("BadDimensions", "gates within a layer must act on disjoint targets");
        used[static_cast<std::size_t>(t)] = 1;
      }
      if (g.diagonal) {
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t col = 0; col < d; ++col)
            if (r != col && g.matrix[r * d + col] != cd(0.0))
              fail("BadDimensions", "diagonal-flagged gate has off-diagonal entries");
      }
    }
  }
  if (c.boundary.kind == Boundary::Kind::Fixed) {
    if (static_cast<int>(c.boundary.left.size()) != c.width ||
        static_cast<int>(c.boundary.right.size()) != c.width)
      fail("BadDimensions", "fixed boundary strings must have one entry per qubit");
    for (int s : c.boundary.left)
      if (s < 0 || s >= c.levels) fail("IndexOutOfRange", "boundary value out of range");
    for (int s : c.boundary.right)
      if (s < 0 || s >= c.levels) fail("IndexOutOfRange", "boundary value out of range");
  }
}

std::size_t basis_index(const std::vector<int>& digits, int q) {
  std::size_t idx = 0;
  for (int d : digits) idx = idx * static_cast<std::size_t>(q) + static_cast<std::size_t>(d);
  return idx;
}

namespace {

void apply_gate(std::vector<cd>& amp, int width, int q, const Gate& g) {
  const int t = static_cast<int>(g.targets.size());
  const std::size_t dim_t = ipow(q, t);
  const std::size_t qs = static_cast<std::size_t>(q);

  // stride of qubit w in the row-major amplitude array
  auto stride = [&](int w) { return ipow(q, width - 1 - w); };

  if (g.diagonal) {
    std::vector<std::size_t> tstride(g.targets.size());
    for (std::size_t i = 0; i < g.targets.size(); ++i) tstride[i] = stride(g.targets[i]);
    const std::size_t dim = amp.size();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(dim); ++i) {
      std::size_t local = 0;
      for (std::size_t k = 0; k < tstride.size(); ++k)
        local = local * qs + (static_cast<std::size_t>(i) / tstride[k]) % qs;
      amp[static_cast<std::size_t>(i)] *= g.matrix[local * dim_t + local];
    }
    return;
  }

  // offsets of each local configuration inside a slice
  std::vector<std::size_t> toffset(dim_t, 0);
  for (std::size_t local = 0; local < dim_t; ++local) {
    std::size_t rest = local, off = 0;
    for (int k = t - 1; k >= 0; --k) {
      off += (rest % qs) * stride(g.targets[static_cast<std::size_t>(k)]);
      rest /= qs;
    }
    toffset[local] = off;
  }

  std::vector<int> rest_qubits;
  for (int w = 0; w < width; ++w)
    if (std::find(g.targets.begin(), g.targets.end(), w) == g.targets.end())
      rest_qubits.push_back(w);
  std::vector<std::size_t> rstride(rest_qubits.size());
  for (std::size_t i = 0; i < rest_qubits.size(); ++i) rstride[i] = stride(rest_qubits[i]);

  const std::size_t n_rest = ipow(q, static_cast<int>(rest_qubits.size()));
#pragma omp parallel
  {
    std::vector<cd> in(dim_t);
#pragma omp for schedule(static)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(n_rest); ++r) {
      std::size_t rest = static_cast<std::size_t>(r), base = 0;
      for (std::size_t k = rstride.size(); k-- > 0;) {
        base += (rest % qs) * rstride[k];
        rest /= qs;
      }
      for (std::size_t l = 0; l < dim_t; ++l) in[l] = amp[base + toffset[l]];
      for (std::size_t row = 0; row < dim_t; ++row) {
        cd s = 0;
        const cd* mrow = &g.matrix[row * dim_t];
        for (std::size_t col = 0; col < dim_t; ++col) s += mrow[col] * in[col];
        amp[base + toffset[row]] = s;
      }
    }
  }
}

std::vector<const Gate*> canonical_order(const std::vector<Gate>& layer) {
  std::vector<const Gate*> order;
  order.reserve(layer.size());
  for (const auto& g : layer) order.push_back(&g);
  std::sort(order.begin(), order.end(), [](const Gate* a, const Gate* b) {
    return *std::min_element(a->targets.begin(), a->targets.end()) <
           *std::min_element(b->targets.begin(), b->targets.end());
  });
  return order;
}

void check_width(const Circuit& c, const ContractLimits& lim) {
  const bool periodic = c.boundary.kind == Boundary::Kind::Periodic;
  const int cap = periodic ? lim.max_width_periodic : lim.max_width;
  if (c.width > cap)
    fail("TooWide", "width " + std::to_string(c.width) + " exceeds cap " +
                        std::to_string(cap));
  const double bits = c.width * std::log2(static_cast<double>(c.levels));
  // The trace sweep costs one propagation per basis state, so its cap also
  // bounds the state dimension in bits.
  const double cap_bits = periodic ? static_cast<double>(lim.max_width_periodic)
                                   : std::log2(static_cast<double>(lim.dense_cap));
  if (bits > cap_bits + 1e-9)
    fail("TooWide", "state dimension exceeds the dense cap");
}

}  // namespace

void apply_layer(std::vector<cd>& amp, int width, int q, const std::vector<Gate>& layer) {
  for (const Gate* g : canonical_order(layer)) apply_gate(amp, width, q, *g);
}

void apply_circuit(std::vector<cd>& amp, const Circuit& c) {
  for (const auto& layer : c.layers) apply_layer(amp, c.width, c.levels, layer);
}

cd contract(const Circuit& c, const ContractLimits& lim) {
  validate(c);
  check_width(c, lim);
  const std::size_t dim = ipow(c.levels, c.width);
  switch (c.boundary.kind) {
    case Boundary::Kind::Fixed: {
      std::vector<cd> amp(dim, cd(0.0));
      amp[basis_index(c.boundary.right, c.levels)] = 1.0;
      apply_circuit(amp, c);
      return amp[basis_index(c.boundary.left, c.levels)];
    }
    case Boundary::Kind::Open: {
      std::vector<cd> amp(dim, cd(1.0));
      apply_circuit(amp, c);
      return detail::ordered_chunk_sum(dim, [&](std::size_t b, std::size_t e) {
        cd s = 0;
        for (std::size_t i = b; i < e; ++i) s += amp[i];
        return s;
      });
    }
    case Boundary::Kind::Periodic: {
      std::vector<cd> diag(dim);
#pragma omp parallel
      {
        std::vector<cd> amp;
#pragma omp for schedule(dynamic, 16)
        for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(dim); ++b) {
          amp.assign(dim, cd(0.0));
          amp[static_cast<std::size_t>(b)] = 1.0;
          apply_circuit(amp, c);
          diag[static_cast<std::size_t>(b)] = amp[static_cast<std::size_t>(b)];
        }
      }
      cd z = 0;
      for (const cd& d : diag) z += d;
      return z;
    }
  }
  fail("BadDimensions", "unknown boundary kind");
}

cd contract_trace_serial(const Circuit& c, const ContractLimits& lim) {
  validate(c);
  if (c.boundary.kind != Boundary::Kind::Periodic)
    fail("BadDimensions", "trace reference requires a periodic boundary");
  check_width(c, lim);
  const std::size_t dim = ipow(c.levels, c.width);
  std::vector<cd> amp;
  cd z = 0;
  for (std::size_t b = 0; b < dim; ++b) {
    amp.assign(dim, cd(0.0));
    amp[b] = 1.0;
    apply_circuit(amp, c);
    z += amp[b];
  }
  return z;
}

}  // namespace zspin
