#include "zspin/cdt.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "zspin/rng.hpp"

namespace zspin {

void validate(const ForkArray& fa) {
  if (fa.rows < 1 || fa.cols < 1) fail("BadParameters", "fork array needs rows and cols >= 1");
  if (fa.bits.size() != static_cast<std::size_t>(fa.rows) * static_cast<std::size_t>(fa.cols))
    fail("BadParameters", "fork array bit count does not match its shape");
  for (auto b : fa.bits)
    if (b > 1) fail("BadParameters", "fork array entries must be 0 or 1");
  for (int r = 0; r < fa.rows; ++r) {
    bool any = false;
    for (int c = 0; c < fa.cols; ++c) any = any || fa.at(r, c);
    if (!any) fail("DegenerateRow", "row " + std::to_string(r) + " has no fork");
  }
}

namespace {

struct FaceSet {
  TriFace down, up;
};

// The two triangles owned by the fork at (row t, col j).
FaceSet fork_faces(int t, int j) {
  FaceSet f;
  f.down.strip = t;
  f.down.up = false;
  f.down.verts = {GridPoint{t + 1, j}, GridPoint{t + 1, j + 1}, GridPoint{t, j + 1}};
  f.up.strip = t + 1;
  f.up.up = true;
  f.up.verts = {GridPoint{t + 1, j}, GridPoint{t + 1, j + 1}, GridPoint{t + 2, j}};
  return f;
}

TriEdge make_edge(GridPoint a, GridPoint b) {
  if (b < a) std::swap(a, b);
  return TriEdge{a, b, a.slice == b.slice};
}

bool edge_less(const TriEdge& x, const TriEdge& y) {
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

void collect_closure(const std::vector<TriFace>& faces,
                     std::set<GridPoint>& verts,
                     std::vector<TriEdge>& edges) {
  std::set<std::pair<GridPoint, GridPoint>> seen;
  for (const auto& f : faces) {
    for (const auto& v : f.verts) verts.insert(v);
    const std::array<std::pair<int, int>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
    for (auto [i, j] : pairs) {
      TriEdge e = make_edge(f.verts[static_cast<std::size_t>(i)],
                            f.verts[static_cast<std::size_t>(j)]);
      if (seen.insert({e.a, e.b}).second) edges.push_back(e);
    }
  }
  std::sort(edges.begin(), edges.end(), edge_less);
}

}  // namespace

FoliatedTriangulation decode(const ForkArray& fa) {
  validate(fa);
  FoliatedTriangulation tri;
  tri.rows = fa.rows;
  tri.cols = fa.cols;
  for (int t = 0; t < fa.rows; ++t)
    for (int j = 0; j < fa.cols; ++j)
      if (fa.at(t, j)) {
        const FaceSet f = fork_faces(t, j);
        tri.faces.push_back(f.down);
        tri.faces.push_back(f.up);
      }
  std::set<GridPoint> verts;
  collect_closure(tri.faces, verts, tri.edges);
  tri.slices.assign(static_cast<std::size_t>(fa.rows) + 2, {});
  for (const auto& v : verts) tri.slices[static_cast<std::size_t>(v.slice)].push_back(v.col);
  for (auto& s : tri.slices) std::sort(s.begin(), s.end());
  return tri;
}

ForkArray encode(const FoliatedTriangulation& tri) {
  if (tri.rows < 1 || tri.cols < 1) fail("NotFoliated", "missing ambient extent");
  ForkArray fa;
  fa.rows = tri.rows;
  fa.cols = tri.cols;
  fa.bits.assign(static_cast<std::size_t>(tri.rows) * static_cast<std::size_t>(tri.cols), 0);

  std::map<std::pair<int, int>, std::pair<bool, bool>> found;  // (row,col) -> (down, up)
  for (const auto& f : tri.faces) {
    // recover the owning fork and check the face sits exactly where the
    // codec would have put it
    int row, col;
    if (f.up) {
      row = f.strip - 1;
      col = f.verts[0].col;
    } else {
      row = f.strip;
      col = f.verts[0].col;
    }
    if (row < 0 || row >= tri.rows || col < 0 || col >= tri.cols)
      fail("NotFoliated", "face outside the ambient extent");
    const FaceSet want = fork_faces(row, col);
    const TriFace& ref = f.up ? want.up : want.down;
    if (f.strip != ref.strip || f.verts != ref.verts)
      fail("NotFoliated", "face does not match the fork layout");
    auto& flags = found[{row, col}];
    auto& slot = f.up ? flags.second : flags.first;
    if (slot) fail("NotFoliated", "duplicate face");
    slot = true;
  }
  for (const auto& [key, flags] : found) {
    if (!(flags.first && flags.second))
      fail("NotFoliated", "fork is missing one of its two faces");
    fa.bits[static_cast<std::size_t>(key.first) * static_cast<std::size_t>(tri.cols) +
            static_cast<std::size_t>(key.second)] = 1;
  }

  // the stored complex must be exactly the closure of those forks
  FoliatedTriangulation check;
  try {
    check = decode(fa);
  } catch (const Error&) {
    fail("NotFoliated", "fork set violates row non-degeneracy");
  }
  auto face_key = [](const TriFace& f) {
    return std::tuple(f.strip, f.up, f.verts[0], f.verts[1], f.verts[2]);
  };
  std::multiset<decltype(face_key(TriFace{}))> a, b;
  for (const auto& f : tri.faces) a.insert(face_key(f));
  for (const auto& f : check.faces) b.insert(face_key(f));
  if (a != b) fail("NotFoliated", "face set mismatch");
  auto edge_key = [](const TriEdge& e) { return std::tuple(e.a, e.b, e.spacelike); };
  std::set<decltype(edge_key(TriEdge{}))> ea, eb;
  for (const auto& e : tri.edges) ea.insert(edge_key(e));
  for (const auto& e : check.edges) eb.insert(edge_key(e));
  if (ea != eb) fail("NotFoliated", "edge set mismatch");
  if (tri.slices != check.slices) fail("NotFoliated", "vertex set mismatch");
  return fa;
}

Observables observables(const FoliatedTriangulation& tri, double lambda_cc) {
  Observables obs;
  obs.volume = static_cast<long long>(tri.faces.size());
  obs.action = lambda_cc * static_cast<double>(obs.volume);

  std::map<GridPoint, int> incident;
  for (std::size_t s = 0; s < tri.slices.size(); ++s)
    for (int c : tri.slices[s]) incident[GridPoint{static_cast<int>(s), c}] = 0;
  for (const auto& f : tri.faces)
    for (const auto& v : f.verts) ++incident[v];

  const double pi = std::acos(-1.0);
  for (const auto& [v, k] : incident) {
    obs.coordination.push_back(k);
    obs.deficit_total += 2.0 * pi - (pi / 3.0) * static_cast<double>(k);
  }
  return obs;
}

MetropolisSummary metropolis_sample(
    const MetropolisParams& p,
    const std::function<void(long long, const ForkArray&)>& on_step,
    const std::function<void(long long, const ForkArray&, double)>& on_sample) {
  if (p.rows < 1 || p.cols < 1 || p.steps < 1 || p.thin < 1)
    fail("BadParameters", "rows, cols, steps and thin must be positive");

  ForkArray state;
  state.rows = p.rows;
  state.cols = p.cols;
  state.bits.assign(static_cast<std::size_t>(p.rows) * static_cast<std::size_t>(p.cols), 1);
  std::vector<int> row_count(static_cast<std::size_t>(p.rows), p.cols);
  int pop = p.rows * p.cols;

  auto eng = substream(p.seed, 0);
  MetropolisSummary sum;
  sum.steps = p.steps;
  double vol_acc = 0.0;
  long long accepted = 0;

  for (long long step = 1; step <= p.steps; ++step) {
    const int r = static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(p.rows)));
    const int c = static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(p.cols)));
    const double u = uniform01(eng);  // drawn every step to keep the stream aligned
    auto& bit = state.bits[static_cast<std::size_t>(r) * static_cast<std::size_t>(p.cols) +
                           static_cast<std::size_t>(c)];
    const bool removing = bit != 0;
    const bool valid = !(removing && row_count[static_cast<std::size_t>(r)] == 1);
    if (valid) {
      const double delta_action = (removing ? -2.0 : 2.0) * p.lambda_cc;
      if (u < std::exp(-delta_action)) {
        bit = removing ? 0 : 1;
        row_count[static_cast<std::size_t>(r)] += removing ? -1 : 1;
        pop += removing ? -1 : 1;
        ++accepted;
      }
    }
    const double volume = 2.0 * pop;
    vol_acc += volume;
    if (on_step) on_step(step, state);
    if (on_sample && step % p.thin == 0)
      on_sample(step, state, static_cast<double>(accepted) / static_cast<double>(step));
  }
  sum.accepted = accepted;
  sum.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(p.steps);
  sum.mean_volume = vol_acc / static_cast<double>(p.steps);
  sum.mean_action = p.lambda_cc * sum.mean_volume;
  sum.final_state = std::move(state);
  return sum;
}

}  // namespace zspin
