// zspin: partition functions of classical spin models by mutually-checking
// backends (exact enumeration, state overlap, circuit contraction, sampled
// estimation), plus rewrite rules and the fork codec for foliated
// triangulations. All machine output is a single JSON document on stdout.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "zspin/cdt.hpp"
#include "zspin/circuit.hpp"
#include "zspin/estimator.hpp"
#include "zspin/io.hpp"
#include "zspin/lattice.hpp"
#include "zspin/overlap.hpp"
#include "zspin/parallel.hpp"
#include "zspin/rewrite.hpp"

namespace {

using namespace zspin;

struct GlobalOpts {
  int threads = 0;
  int max_width = 22;
  double max_bits = kDefaultMaxBits;
  bool pretty = false;
};

void print_doc(const JsonOut& doc, const GlobalOpts& g) {
  std::cout << doc.dump(g.pretty) << "\n";
}

ContractLimits limits_for(const GlobalOpts& g) {
  ContractLimits lim;
  lim.max_width = g.max_width;
  lim.max_width_periodic = std::min(g.max_width, lim.max_width_periodic);
  return lim;
}

JsonOut z_record(cd z, const std::string& method) {
  JsonOut doc = JsonOut::obj();
  doc.add("re", JsonOut::num(z.real()));
  doc.add("im", JsonOut::num(z.imag()));
  doc.add("method", JsonOut::str(method));
  return doc;
}

int run_z_exact(const std::string& path, const GlobalOpts& g) {
  const SpinModel m = load_model_or_lattice(path);
  print_doc(z_record(partition_function_exact(m, g.max_bits), "exact"), g);
  return 0;
}

int run_z_overlap(const std::string& path, const GlobalOpts& g) {
  const SpinModel m = load_model_or_lattice(path);
  const StateVector phi = phi_state(m, kDefaultDenseCap, g.max_bits);
  const cd z = pair_state(alpha_covector(m), phi);
  print_doc(z_record(z, "overlap"), g);
  return 0;
}

int run_z_circuit(const std::string& path, const GlobalOpts& g) {
  const json j = load_json_file(path);
  if (!is_lattice_json(j)) fail("BadFile", "circuit evaluation needs a lattice file");
  const Circuit c = lattice_to_circuit(lattice_from_json(j));
  const cd z = contract(c, limits_for(g));
  JsonOut doc = z_record(z, "circuit");
  doc.add("width", JsonOut::integer(c.width));
  doc.add("layers", JsonOut::integer(static_cast<long long>(c.layers.size())));
  print_doc(doc, g);
  return 0;
}

int run_estimate(const std::string& path, long long samples, std::uint64_t seed, double tol,
                 const GlobalOpts& g) {
  const json j = load_json_file(path);
  if (!is_lattice_json(j)) fail("BadFile", "estimation needs a lattice file");
  const EstimatorReport rep =
      estimate_partition_function(lattice_from_json(j), samples, seed, tol, limits_for(g));
  JsonOut doc = JsonOut::obj();
  doc.add("estimate", JsonOut::complex(rep.estimate));
  doc.add("stderr_re", JsonOut::num(rep.stderr_re));
  doc.add("stderr_im", JsonOut::num(rep.stderr_im));
  doc.add("samples", JsonOut::integer(rep.samples));
  doc.add("seed", JsonOut::integer(static_cast<long long>(rep.seed)));
  doc.add("scale", JsonOut::complex(rep.scale));
  doc.add("z_estimate", JsonOut::complex(rep.z_estimate));
  print_doc(doc, g);
  return 0;
}

int run_rewrite(const std::string& path, bool do_merge, int index, const GlobalOpts& g) {
  const SpinModel m = load_model_or_lattice(path);
  const SpinModel out = do_merge ? merge(m, index) : delete_interaction(m, index);
  print_doc(model_to_json(out), g);
  return 0;
}

int run_reduce_clique(const std::string& path, int n, const GlobalOpts& g) {
  const SpinModel m = load_model_or_lattice(path);
  print_doc(model_to_json(specialize_clique(n, m)), g);
  return 0;
}

int run_project(const std::string& path, const std::string& projector_path, bool edges_0y,
                const GlobalOpts& g) {
  const SpinModel m = load_model_or_lattice(path);
  const StateVector phi = phi_state(m, kDefaultDenseCap, g.max_bits);
  std::vector<Projection> ps;
  if (edges_0y) {
    // <0| - i<1| on every two-body ising qudit
    for (std::size_t k = 0; k < phi.labels.size(); ++k) {
      const auto& it = m.interactions[static_cast<std::size_t>(phi.labels[k])];
      if (it.tag == "ising" && it.vars.size() == 2)
        ps.push_back({static_cast<int>(k), {cd(1.0, 0.0), cd(0.0, -1.0)}});
    }
  } else if (!projector_path.empty()) {
    ps = projections_from_json(load_json_file(projector_path));
  } else {
    fail("BadFile", "project needs --projector FILE or --edges-0y");
  }
  print_doc(state_to_json(project(phi, ps)), g);
  return 0;
}

int run_cdt_decode(const std::string& path, const GlobalOpts& g) {
  print_doc(triangulation_to_json(decode(load_fork_array(path))), g);
  return 0;
}

int run_cdt_encode(const std::string& path, const GlobalOpts& g) {
  const ForkArray fa = encode(triangulation_from_json(load_json_file(path)));
  JsonOut doc = JsonOut::obj();
  doc.add("rows", JsonOut::integer(fa.rows));
  doc.add("cols", JsonOut::integer(fa.cols));
  JsonOut bits = JsonOut::arr();
  for (int r = 0; r < fa.rows; ++r) {
    std::string line;
    for (int c = 0; c < fa.cols; ++c) line += fa.at(r, c) ? '1' : '0';
    bits.push(JsonOut::str(line));
  }
  doc.add("bits", std::move(bits));
  print_doc(doc, g);
  return 0;
}

int run_cdt_observe(const std::string& path, double lambda_cc, const GlobalOpts& g) {
  const Observables obs = observables(decode(load_fork_array(path)), lambda_cc);
  JsonOut doc = JsonOut::obj();
  doc.add("volume", JsonOut::integer(obs.volume));
  doc.add("action", JsonOut::num(obs.action));
  doc.add("deficit_total", JsonOut::num(obs.deficit_total));
  JsonOut coord = JsonOut::arr();
  for (int k : obs.coordination) coord.push(JsonOut::integer(k));
  doc.add("coordination", std::move(coord));
  print_doc(doc, g);
  return 0;
}

int run_cdt_sample(const MetropolisParams& p, const std::string& csv_path,
                   const GlobalOpts& g) {
  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path);
    if (!csv) fail("BadFile", "cannot open " + csv_path + " for writing");
    csv << "step,volume,action,acceptance_rate\n";
  }
  auto on_sample = [&](long long step, const ForkArray& state, double rate) {
    if (!csv.is_open()) return;
    const double volume = 2.0 * state.popcount();
    csv << step << "," << format_g17(volume) << "," << format_g17(p.lambda_cc * volume) << ","
        << format_g17(rate) << "\n";
  };
  const MetropolisSummary sum = metropolis_sample(p, nullptr, on_sample);
  JsonOut doc = JsonOut::obj();
  doc.add("rows", JsonOut::integer(p.rows));
  doc.add("cols", JsonOut::integer(p.cols));
  doc.add("lambda_cc", JsonOut::num(p.lambda_cc));
  doc.add("steps", JsonOut::integer(sum.steps));
  doc.add("seed", JsonOut::integer(static_cast<long long>(p.seed)));
  doc.add("thin", JsonOut::integer(p.thin));
  doc.add("accepted", JsonOut::integer(sum.accepted));
  doc.add("acceptance_rate", JsonOut::num(sum.acceptance_rate));
  doc.add("mean_volume", JsonOut::num(sum.mean_volume));
  doc.add("mean_action", JsonOut::num(sum.mean_action));
  JsonOut bits = JsonOut::arr();
  for (int r = 0; r < sum.final_state.rows; ++r) {
    std::string line;
    for (int c = 0; c < sum.final_state.cols; ++c) line += sum.final_state.at(r, c) ? '1' : '0';
    bits.push(JsonOut::str(line));
  }
  doc.add("final_state", std::move(bits));
  print_doc(doc, g);
  return 0;
}

// Golden-file self check: recompute each stored value and compare.
int run_selfcheck(const std::string& dir, const GlobalOpts& g) {
  const json manifest = load_json_file(dir + "/manifest.json");
  JsonOut checks = JsonOut::arr();
  bool all_pass = true;
  for (const auto& entry : manifest.at("checks")) {
    const std::string name = entry.at("name").get<std::string>();
    const std::string kind = entry.at("kind").get<std::string>();
    const std::string file = dir + "/" + entry.at("file").get<std::string>();
    bool pass = false;
    if (kind == "z-exact" || kind == "z-overlap" || kind == "z-circuit") {
      const cd want = parse_complex(entry.at("expect"));
      const double rtol = entry.value("rtol", 1e-9);
      cd got;
      if (kind == "z-exact") {
        got = partition_function_exact(load_model_or_lattice(file), g.max_bits);
      } else if (kind == "z-overlap") {
        const SpinModel m = load_model_or_lattice(file);
        got = pair_state(alpha_covector(m), phi_state(m, kDefaultDenseCap, g.max_bits));
      } else {
        const Circuit c = lattice_to_circuit(lattice_from_json(load_json_file(file)));
        got = contract(c, limits_for(g));
      }
      pass = std::abs(got - want) <= rtol * std::abs(want);
    } else if (kind == "cdt-observe") {
      const Observables obs =
          observables(decode(load_fork_array(file)), entry.at("lambda_cc").get<double>());
      pass = obs.volume == entry.at("volume").get<long long>() &&
             std::abs(obs.action - entry.at("action").get<double>()) <= 1e-12;
    } else {
      fail("BadFile", "unknown check kind " + kind);
    }
    all_pass = all_pass && pass;
    JsonOut cj = JsonOut::obj();
    cj.add("name", JsonOut::str(name));
    cj.add("pass", JsonOut::boolean(pass));
    checks.push(std::move(cj));
  }
  JsonOut doc = JsonOut::obj();
  doc.add("checks", std::move(checks));
  doc.add("all_pass", JsonOut::boolean(all_pass));
  print_doc(doc, g);
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partition functions of classical spin models"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--threads", g.threads, "worker thread count (default: all)");
  app.add_option("--max-width", g.max_width, "dense contraction width cap");
  app.add_option("--max-bits", g.max_bits, "enumeration cap in bits of configuration space");
  app.add_flag("--pretty", g.pretty, "indent JSON output");

  std::string file, projector_path, csv_path, golden_dir = "data/golden";
  long long samples = 10000, steps = 0;
  std::uint64_t seed = 1;
  double tol = kDefaultUnitaryTol, lambda_cc = 0.0;
  int index = 0, clique_n = 0;
  bool edges_0y = false;
  MetropolisParams mp;

  auto* z = app.add_subcommand("z", "evaluate a partition function");
  z->require_subcommand(1);
  auto* z_exact = z->add_subcommand("exact", "exhaustive enumeration");
  z_exact->add_option("file", file)->required();
  auto* z_overlap = z->add_subcommand("overlap", "state-overlap pairing");
  z_overlap->add_option("file", file)->required();
  auto* z_circuit = z->add_subcommand("circuit", "layered circuit contraction");
  z_circuit->add_option("file", file)->required();

  auto* estimate = app.add_subcommand("estimate", "sampled amplitude estimate of Z");
  estimate->add_option("file", file)->required();
  estimate->add_option("--samples", samples);
  estimate->add_option("--seed", seed);
  estimate->add_option("--tolerance", tol, "unitarity tolerance");

  auto* rewrite = app.add_subcommand("rewrite", "graph rewrite rules");
  rewrite->require_subcommand(1);
  auto* rw_merge = rewrite->add_subcommand("merge", "contract an equality-type interaction");
  rw_merge->add_option("file", file)->required();
  rw_merge->add_option("--index", index)->required();
  auto* rw_delete = rewrite->add_subcommand("delete", "remove an interaction");
  rw_delete->add_option("file", file)->required();
  rw_delete->add_option("--index", index)->required();

  auto* reduce = app.add_subcommand("reduce", "completeness reductions");
  reduce->require_subcommand(1);
  auto* rd_clique = reduce->add_subcommand("clique", "embed into the n-vertex complete graph");
  rd_clique->add_option("file", file)->required();
  rd_clique->add_option("--n", clique_n)->required();

  auto* project_cmd = app.add_subcommand("project", "project qudits of the interaction state");
  project_cmd->add_option("file", file)->required();
  project_cmd->add_option("--projector", projector_path, "projection description file");
  project_cmd->add_flag("--edges-0y", edges_0y, "apply <0|-i<1| to every ising edge qudit");

  auto* cdt = app.add_subcommand("cdt", "foliated triangulations");
  cdt->require_subcommand(1);
  auto* cdt_decode = cdt->add_subcommand("decode", "fork array to triangulation");
  cdt_decode->add_option("file", file)->required();
  auto* cdt_encode = cdt->add_subcommand("encode", "triangulation to fork array");
  cdt_encode->add_option("file", file)->required();
  auto* cdt_observe = cdt->add_subcommand("observe", "volume, action, curvature");
  cdt_observe->add_option("file", file)->required();
  cdt_observe->add_option("--lambda-cc", lambda_cc, "cosmological constant");
  auto* cdt_sample = cdt->add_subcommand("sample", "Metropolis chain over fork arrays");
  cdt_sample->add_option("--rows", mp.rows)->required();
  cdt_sample->add_option("--cols", mp.cols)->required();
  cdt_sample->add_option("--lambda-cc", mp.lambda_cc);
  cdt_sample->add_option("--steps", steps)->required();
  cdt_sample->add_option("--seed", seed);
  cdt_sample->add_option("--thin", mp.thin);
  cdt_sample->add_option("--csv", csv_path, "per-sample CSV output path");

  auto* selfcheck = app.add_subcommand("selfcheck", "recompute golden values");
  selfcheck->add_option("--dir", golden_dir, "golden file directory");

  // let the global flags appear after a subcommand as well
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (CLI::App* s : a->get_subcommands([](CLI::App*) { return true; }))
      enable_fallthrough(s);
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  zspin::detail::set_threads(g.threads);

  try {
    if (z_exact->parsed()) return run_z_exact(file, g);
    if (z_overlap->parsed()) return run_z_overlap(file, g);
    if (z_circuit->parsed()) return run_z_circuit(file, g);
    if (estimate->parsed()) return run_estimate(file, samples, seed, tol, g);
    if (rw_merge->parsed()) return run_rewrite(file, true, index, g);
    if (rw_delete->parsed()) return run_rewrite(file, false, index, g);
    if (rd_clique->parsed()) return run_reduce_clique(file, clique_n, g);
    if (project_cmd->parsed()) return run_project(file, projector_path, edges_0y, g);
    if (cdt_decode->parsed()) return run_cdt_decode(file, g);
    if (cdt_encode->parsed()) return run_cdt_encode(file, g);
    if (cdt_observe->parsed()) return run_cdt_observe(file, lambda_cc, g);
    if (cdt_sample->parsed()) {
      mp.steps = steps;
      mp.seed = seed;
      return run_cdt_sample(mp, csv_path, g);
    }
    if (selfcheck->parsed()) return run_selfcheck(golden_dir, g);
  } catch (const Error& e) {
    JsonOut doc = JsonOut::obj();
    JsonOut err = JsonOut::obj();
    err.add("kind", JsonOut::str(e.kind()));
    err.add("message", JsonOut::str(e.what()));
    doc.add("error", std::move(err));
    std::cout << doc.dump(g.pretty) << "\n";
    return 3;
  } catch (const std::exception& e) {
    // malformed or mistyped input files surface as parse exceptions
    JsonOut doc = JsonOut::obj();
    JsonOut err = JsonOut::obj();
    err.add("kind", JsonOut::str("BadFile"));
    err.add("message", JsonOut::str(e.what()));
    doc.add("error", std::move(err));
    std::cout << doc.dump(g.pretty) << "\n";
    return 3;
  }
  return 2;
}
