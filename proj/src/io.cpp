#include "zspin/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "zspin/families.hpp"

namespace zspin {

// ---- JsonOut ---------------------------------------------------------------

JsonOut JsonOut::obj() {
  JsonOut v;
  v.t_ = T::Obj;
  return v;
}
JsonOut JsonOut::arr() {
  JsonOut v;
  v.t_ = T::Arr;
  return v;
}
JsonOut JsonOut::num(double x) {
  JsonOut v;
  v.t_ = T::Real;
  v.d_ = x;
  return v;
}
JsonOut JsonOut::integer(long long x) {
  JsonOut v;
  v.t_ = T::Int;
  v.i_ = x;
  return v;
}
JsonOut JsonOut::str(std::string x) {
  JsonOut v;
  v.t_ = T::Str;
  v.s_ = std::move(x);
  return v;
}
JsonOut JsonOut::boolean(bool x) {
  JsonOut v;
  v.t_ = T::Bool;
  v.b_ = x;
  return v;
}
JsonOut JsonOut::complex(cd x) {
  JsonOut v = obj();
  v.add("re", num(x.real()));
  v.add("im", num(x.imag()));
  return v;
}

JsonOut& JsonOut::add(const std::string& key, JsonOut v) {
  obj_.emplace_back(key, std::move(v));
  return *this;
}
JsonOut& JsonOut::push(JsonOut v) {
  arr_.push_back(std::move(v));
  return *this;
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += '"';
}

void newline_indent(std::string& out, bool pretty, int depth) {
  if (!pretty) return;
  out += '\n';
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
}

}  // namespace

void JsonOut::write(std::string& out, bool pretty, int depth) const {
  switch (t_) {
    case T::Null: out += "null"; break;
    case T::Bool: out += b_ ? "true" : "false"; break;
    case T::Int: out += std::to_string(i_); break;
    case T::Real: out += format_g17(d_); break;
    case T::Str: write_escaped(out, s_); break;
    case T::Arr: {
      out += '[';
      for (std::size_t i = 0; i < arr_.size(); ++i) {
        if (i) out += pretty ? ", " : ",";
        arr_[i].write(out, pretty, depth);
      }
      out += ']';
      break;
    }
    case T::Obj: {
      out += '{';
      for (std::size_t i = 0; i < obj_.size(); ++i) {
        if (i) out += ',';
        newline_indent(out, pretty, depth + 1);
        write_escaped(out, obj_[i].first);
        out += pretty ? ": " : ":";
        obj_[i].second.write(out, pretty, depth + 1);
      }
      if (!obj_.empty()) newline_indent(out, pretty, depth);
      out += '}';
      break;
    }
  }
}

std::string JsonOut::dump(bool pretty) const {
  std::string out;
  write(out, pretty, 0);
  return out;
}

// ---- parsing helpers --------------------------------------------------------

cd parse_complex(const json& j) {
  if (j.is_number()) return cd(j.get<double>(), 0.0);
  if (j.is_object()) {
    double re = j.value("re", 0.0);
    double im = j.value("im", 0.0);
    return cd(re, im);
  }
  fail("BadFile", "expected a number or an {re, im} object");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("BadFile", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail("BadFile", path + ": " + e.what());
  }
  return j;
}

namespace {

std::vector<cd> parse_complex_list(const json& j, const char* what) {
  if (!j.is_array()) fail("BadFile", std::string("expected an array for ") + what);
  std::vector<cd> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(parse_complex(x));
  return out;
}

std::vector<int> parse_int_list(const json& j, const char* what) {
  if (!j.is_array()) fail("BadFile", std::string("expected an array for ") + what);
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(x.get<int>());
  return out;
}

}  // namespace

// ---- model files --------------------------------------------------------------

SpinModel model_from_json(const json& j) {
  SpinModel m;
  if (!j.contains("variables")) fail("BadFile", "model file needs a variables block");
  m.num_vars = j.at("variables").at("count").get<int>();
  m.levels = j.at("variables").value("levels", 2);
  if (j.contains("beta")) m.beta = parse_complex(j.at("beta"));
  const int q = m.levels;
  for (const auto& ij : j.value("interactions", json::array())) {
    const std::string type = ij.at("type").get<std::string>();
    const std::vector<int> vars = parse_int_list(ij.at("vars"), "vars");
    if (type == "ising") {
      if (vars.size() != 2) fail("BadFile", "ising interactions are two-body");
      if (q != 2) fail("BadFile", "ising interactions need two-level variables");
      m.interactions.push_back(make_ising_edge(vars[0], vars[1], parse_complex(ij.at("J"))));
    } else if (type == "field") {
      if (vars.size() != 1) fail("BadFile", "field interactions are one-body");
      if (q != 2) fail("BadFile", "field interactions need two-level variables");
      m.interactions.push_back(make_field(vars[0], parse_complex(ij.at("h"))));
    } else if (type == "potts") {
      if (vars.size() == 2)
        m.interactions.push_back(make_potts_edge(vars[0], vars[1], parse_complex(ij.at("J")), q));
      else if (vars.size() == 1)
        m.interactions.push_back(make_potts_field(vars[0], parse_complex(ij.at("h")), q));
      else
        fail("BadFile", "potts interactions are one- or two-body");
    } else if (type == "table") {
      m.interactions.push_back(
          make_energy_table(vars, parse_complex_list(ij.at("energies"), "energies")));
    } else if (type == "weight-table") {
      m.interactions.push_back(
          make_weight_table(vars, parse_complex_list(ij.at("weights"), "weights")));
    } else if (type == "constraint-equal") {
      if (vars.size() != 2) fail("BadFile", "equality constraints are two-body");
      m.interactions.push_back(make_equal_constraint(vars[0], vars[1], q));
    } else {
      fail("BadFile", "unknown interaction type " + type);
    }
  }
  validate(m);
  return m;
}

JsonOut model_to_json(const SpinModel& m) {
  JsonOut root = JsonOut::obj();
  JsonOut vars = JsonOut::obj();
  vars.add("count", JsonOut::integer(m.num_vars));
  vars.add("levels", JsonOut::integer(m.levels));
  root.add("variables", std::move(vars));
  root.add("beta", JsonOut::complex(m.beta));
  JsonOut list = JsonOut::arr();
  for (const auto& it : m.interactions) {
    JsonOut ij = JsonOut::obj();
    JsonOut vj = JsonOut::arr();
    for (int v : it.vars) vj.push(JsonOut::integer(v));
    if (it.tag == "ising" && it.kind == TableKind::Energy) {
      ij.add("type", JsonOut::str("ising"));
      ij.add("vars", std::move(vj));
      ij.add("J", JsonOut::complex(-it.table[0]));
    } else if (it.tag == "field" && it.kind == TableKind::Energy) {
      ij.add("type", JsonOut::str("field"));
      ij.add("vars", std::move(vj));
      ij.add("h", JsonOut::complex(-it.table[0]));
    } else if (it.tag == "potts" && it.kind == TableKind::Energy) {
      ij.add("type", JsonOut::str("potts"));
      ij.add("vars", std::move(vj));
      const char* param = it.vars.size() == 2 ? "J" : "h";
      ij.add(param, JsonOut::complex(-it.table[0]));
    } else if (it.tag == "constraint-equal") {
      ij.add("type", JsonOut::str("constraint-equal"));
      ij.add("vars", std::move(vj));
    } else if (it.kind == TableKind::Energy) {
      ij.add("type", JsonOut::str("table"));
      ij.add("vars", std::move(vj));
      JsonOut ej = JsonOut::arr();
      for (const cd& e : it.table) ej.push(JsonOut::complex(e));
      ij.add("energies", std::move(ej));
    } else {
      ij.add("type", JsonOut::str("weight-table"));
      ij.add("vars", std::move(vj));
      JsonOut wj = JsonOut::arr();
      for (const cd& w : it.table) wj.push(JsonOut::complex(w));
      ij.add("weights", std::move(wj));
    }
    list.push(std::move(ij));
  }
  root.add("interactions", std::move(list));
  return root;
}

// ---- lattice files -------------------------------------------------------------

bool is_lattice_json(const json& j) { return j.is_object() && j.contains("family"); }

namespace {

Boundary boundary_from_json(const json& j) {
  Boundary b;
  if (!j.is_object()) fail("BadFile", "boundary must be an object");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "fixed") {
    b.kind = Boundary::Kind::Fixed;
    b.left = parse_int_list(j.at("left"), "boundary.left");
    b.right = parse_int_list(j.at("right"), "boundary.right");
  } else if (kind == "open") {
    b.kind = Boundary::Kind::Open;
  } else if (kind == "periodic") {
    b.kind = Boundary::Kind::Periodic;
  } else {
    fail("BadFile", "unknown boundary kind " + kind);
  }
  return b;
}

std::vector<LocalTable> tables_from_json(const json& j, TableKind kind, const char* what) {
  std::vector<LocalTable> out;
  if (!j.is_array()) fail("BadFile", std::string("expected an array of tables for ") + what);
  for (const auto& tj : j) out.push_back({kind, parse_complex_list(tj, what)});
  return out;
}

std::vector<LocalTable> pair_tables_from_J(const json& j, bool potts, int q, const char* what) {
  std::vector<LocalTable> out;
  for (const cd& coupling : parse_complex_list(j, what))
    out.push_back(potts ? potts_pair_table(coupling, q) : ising_pair_table(coupling));
  return out;
}

}  // namespace

LatticeSpec lattice_from_json(const json& j) {
  LatticeSpec spec;
  const std::string family = j.at("family").get<std::string>();
  spec.levels = j.value("levels", 2);
  if (j.contains("beta")) spec.beta = parse_complex(j.at("beta"));
  spec.boundary = boundary_from_json(j.at("boundary"));
  const json& dims = j.at("dims");
  const json& cp = j.at("couplings");
  const std::string ck = cp.value("kind", "ising");

  if (family == "vertex-2d-general" || family == "six-vertex-2d") {
    spec.family = LatticeSpec::Family::Vertex;
    spec.vertex.width = dims.at("width").get<int>();
    spec.vertex.depth = dims.at("depth").get<int>();
    const int count = vertex_gate_count(spec.vertex.width, spec.vertex.depth);
    if (ck == "six-vertex") {
      if (spec.levels != 2) fail("BadFile", "six-vertex weights need two-level variables");
      if (cp.contains("weights")) {
        const LocalTable t = six_vertex_table(parse_complex_list(cp.at("weights"), "weights"));
        spec.vertex.gates.assign(static_cast<std::size_t>(count), t);
      } else {
        for (const auto& wj : cp.at("weights_per_gate"))
          spec.vertex.gates.push_back(six_vertex_table(parse_complex_list(wj, "weights")));
      }
    } else if (ck == "energy-tables") {
      spec.vertex.gates = tables_from_json(cp.at("gates"), TableKind::Energy, "gates");
    } else if (ck == "weight-tables") {
      spec.vertex.gates = tables_from_json(cp.at("gates"), TableKind::Weight, "gates");
    } else {
      fail("BadFile", "unknown coupling kind " + ck);
    }
  } else if (family == "edge-2d") {
    spec.family = LatticeSpec::Family::Edge;
    spec.edge.sites = dims.at("sites").get<int>();
    spec.edge.columns = dims.at("columns").get<int>();
    if (ck == "ising" || ck == "potts") {
      const bool potts = ck == "potts";
      spec.edge.horizontal =
          pair_tables_from_J(cp.at("horizontal"), potts, spec.levels, "horizontal");
      spec.edge.vertical = pair_tables_from_J(cp.at("vertical"), potts, spec.levels, "vertical");
    } else if (ck == "energy-tables" || ck == "weight-tables") {
      const TableKind kind = ck == "energy-tables" ? TableKind::Energy : TableKind::Weight;
      spec.edge.horizontal = tables_from_json(cp.at("horizontal"), kind, "horizontal");
      spec.edge.vertical = tables_from_json(cp.at("vertical"), kind, "vertical");
    } else {
      fail("BadFile", "unknown coupling kind " + ck);
    }
  } else if (family == "lgt-3d-temporal") {
    spec.family = LatticeSpec::Family::Lgt;
    spec.lgt.sx = dims.at("sx").get<int>();
    spec.lgt.sy = dims.at("sy").get<int>();
    spec.lgt.steps = dims.at("steps").get<int>();
    spec.lgt.spatial_periodic = dims.value("spatial", "periodic") == std::string("periodic");
    if (ck == "ising") {
      for (const cd& coupling : parse_complex_list(cp.at("temporal"), "temporal"))
        spec.lgt.temporal.push_back(ising_pair_table(coupling));
      for (const cd& coupling : parse_complex_list(cp.at("plaquette"), "plaquette"))
        spec.lgt.plaquette.push_back(ising_plaquette_table(coupling));
    } else if (ck == "energy-tables" || ck == "weight-tables") {
      const TableKind kind = ck == "energy-tables" ? TableKind::Energy : TableKind::Weight;
      spec.lgt.temporal = tables_from_json(cp.at("temporal"), kind, "temporal");
      spec.lgt.plaquette = tables_from_json(cp.at("plaquette"), kind, "plaquette");
    } else {
      fail("BadFile", "unknown coupling kind " + ck);
    }
  } else {
    fail("UnknownFamily", "unknown lattice family " + family);
  }
  validate(spec);
  return spec;
}

SpinModel load_model_or_lattice(const std::string& path) {
  const json j = load_json_file(path);
  if (is_lattice_json(j)) return lattice_to_model(lattice_from_json(j));
  return model_from_json(j);
}

SpinModel instantiate_family(const std::string& family, const json& params) {
  if (family == "ising-graph" || family == "potts-graph") {
    GraphModelParams p;
    p.n = params.at("n").get<int>();
    p.q = params.value("q", 2);
    if (params.contains("beta")) p.beta = parse_complex(params.at("beta"));
    for (const auto& ej : params.value("edges", json::array()))
      p.edges.push_back({ej.at("a").get<int>(), ej.at("b").get<int>(),
                         parse_complex(ej.at("J"))});
    for (const auto& fj : params.value("fields", json::array()))
      p.fields.emplace_back(fj.at("a").get<int>(), parse_complex(fj.at("h")));
    return family == "ising-graph" ? make_ising_graph(p) : make_potts_graph(p);
  }
  if (family == "six-vertex-2d" || family == "vertex-2d-general" || family == "edge-2d" ||
      family == "lgt-3d-temporal") {
    json lj = params;
    lj["family"] = family;
    return lattice_to_model(lattice_from_json(lj));
  }
  fail("UnknownFamily", "unknown family " + family);
}

// ---- fork arrays and triangulations ----------------------------------------------

ForkArray fork_array_from_text(const std::string& text) {
  ForkArray fa;
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) fail("BadFile", "fork array file is empty");
  fa.rows = static_cast<int>(lines.size());
  fa.cols = static_cast<int>(lines[0].size());
  for (const auto& l : lines) {
    if (static_cast<int>(l.size()) != fa.cols)
      fail("BadFile", "fork array rows differ in length");
    for (char c : l) {
      if (c != '0' && c != '1') fail("BadFile", "fork array entries must be 0 or 1");
      fa.bits.push_back(c == '1' ? 1 : 0);
    }
  }
  validate(fa);
  return fa;
}

ForkArray load_fork_array(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("BadFile", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return fork_array_from_text(ss.str());
}

std::string fork_array_to_text(const ForkArray& fa) {
  std::string out;
  for (int r = 0; r < fa.rows; ++r) {
    for (int c = 0; c < fa.cols; ++c) out += fa.at(r, c) ? '1' : '0';
    out += '\n';
  }
  return out;
}

namespace {

JsonOut point_to_json(const GridPoint& p) {
  JsonOut a = JsonOut::arr();
  a.push(JsonOut::integer(p.slice));
  a.push(JsonOut::integer(p.col));
  return a;
}

GridPoint point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) fail("BadFile", "grid points are [slice, col] pairs");
  return GridPoint{j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

JsonOut triangulation_to_json(const FoliatedTriangulation& tri) {
  JsonOut root = JsonOut::obj();
  root.add("rows", JsonOut::integer(tri.rows));
  root.add("cols", JsonOut::integer(tri.cols));
  JsonOut slices = JsonOut::arr();
  std::size_t vertex_count = 0;
  for (const auto& s : tri.slices) {
    JsonOut sj = JsonOut::arr();
    for (int c : s) sj.push(JsonOut::integer(c));
    vertex_count += s.size();
    slices.push(std::move(sj));
  }
  root.add("slices", std::move(slices));
  JsonOut edges = JsonOut::arr();
  for (const auto& e : tri.edges) {
    JsonOut ej = JsonOut::obj();
    ej.add("a", point_to_json(e.a));
    ej.add("b", point_to_json(e.b));
    ej.add("spacelike", JsonOut::boolean(e.spacelike));
    edges.push(std::move(ej));
  }
  root.add("edges", std::move(edges));
  JsonOut faces = JsonOut::arr();
  for (const auto& f : tri.faces) {
    JsonOut fj = JsonOut::obj();
    fj.add("strip", JsonOut::integer(f.strip));
    fj.add("up", JsonOut::boolean(f.up));
    JsonOut vj = JsonOut::arr();
    for (const auto& v : f.verts) vj.push(point_to_json(v));
    fj.add("verts", std::move(vj));
    faces.push(std::move(fj));
  }
  root.add("faces", std::move(faces));
  JsonOut counts = JsonOut::obj();
  counts.add("vertices", JsonOut::integer(static_cast<long long>(vertex_count)));
  counts.add("edges", JsonOut::integer(static_cast<long long>(tri.edges.size())));
  counts.add("faces", JsonOut::integer(static_cast<long long>(tri.faces.size())));
  root.add("counts", std::move(counts));
  return root;
}

FoliatedTriangulation triangulation_from_json(const json& j) {
  FoliatedTriangulation tri;
  tri.rows = j.at("rows").get<int>();
  tri.cols = j.at("cols").get<int>();
  for (const auto& sj : j.at("slices")) tri.slices.push_back(parse_int_list(sj, "slice"));
  for (const auto& ej : j.at("edges")) {
    TriEdge e;
    e.a = point_from_json(ej.at("a"));
    e.b = point_from_json(ej.at("b"));
    e.spacelike = ej.at("spacelike").get<bool>();
    tri.edges.push_back(e);
  }
  for (const auto& fj : j.at("faces")) {
    TriFace f;
    f.strip = fj.at("strip").get<int>();
    f.up = fj.at("up").get<bool>();
    const auto& vj = fj.at("verts");
    if (!vj.is_array() || vj.size() != 3) fail("BadFile", "faces need three vertices");
    for (int k = 0; k < 3; ++k) f.verts[static_cast<std::size_t>(k)] = point_from_json(vj[k]);
    tri.faces.push_back(f);
  }
  return tri;
}

// ---- projections ------------------------------------------------------------------

std::vector<Projection> projections_from_json(const json& j) {
  std::vector<Projection> out;
  for (const auto& pj : j.at("projections")) {
    Projection p;
    p.qudit = pj.at("qudit").get<int>();
    p.coeffs = parse_complex_list(pj.at("coeffs"), "coeffs");
    out.push_back(std::move(p));
  }
  return out;
}

JsonOut state_to_json(const StateVector& sv) {
  JsonOut root = JsonOut::obj();
  JsonOut dims = JsonOut::arr();
  for (std::size_t d : sv.dims) dims.push(JsonOut::integer(static_cast<long long>(d)));
  root.add("dims", std::move(dims));
  JsonOut amps = JsonOut::arr();
  for (std::size_t i = 0; i < sv.amps.size(); ++i) {
    JsonOut aj = JsonOut::obj();
    aj.add("index", JsonOut::integer(static_cast<long long>(i)));
    aj.add("re", JsonOut::num(sv.amps[i].real()));
    aj.add("im", JsonOut::num(sv.amps[i].imag()));
    amps.push(std::move(aj));
  }
  root.add("amplitudes", std::move(amps));
  return root;
}

}  // namespace zspin
