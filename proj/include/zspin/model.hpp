#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace zspin {

using cd = std::complex<double>;

/// Library error carrying a stable machine-readable kind string, e.g.
/// "IndexOutOfRange" or "TooLarge". The CLI maps these onto exit code 3.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(const char* kind, const std::string& msg) {
  throw Error(kind, msg);
}

/// How an interaction's table is interpreted.
enum class TableKind {
  Energy,  // complex energies; Boltzmann weight is exp(-beta * h)
  Weight,  // Boltzmann weights stored directly (constraints, vertex weights)
};

/// How an interaction's local configuration collapses onto its quantum digit.
/// Difference requires arity 2 and a table that factors through
/// (s0 - s1) mod q; the digit dimension is q instead of q^2.
enum class QuditMap { Full, Difference };

struct Interaction {
  std::vector<int> vars;   // k variable indices, duplicates permitted
  std::vector<cd> table;   // q^k entries, row-major, last variable fastest
  TableKind kind = TableKind::Energy;
  QuditMap qudit_map = QuditMap::Full;
  std::string tag;         // "ising", "field", "potts", "plaquette", ...
};

struct SpinModel {
  int num_vars = 0;
  int levels = 2;  // q, uniform across variables
  cd beta{1.0, 0.0};
  std::vector<Interaction> interactions;
};

using Configuration = std::vector<int>;

inline std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// ---- interaction constructors -------------------------------------------

Interaction make_ising_edge(int a, int b, cd coupling);
Interaction make_field(int a, cd h);
Interaction make_potts_edge(int a, int b, cd coupling, int q);
Interaction make_potts_field(int a, cd h, int q);
Interaction make_equal_constraint(int a, int b, int q);
Interaction make_energy_table(std::vector<int> vars, std::vector<cd> energies,
                              std::string tag = "table");
Interaction make_weight_table(std::vector<int> vars, std::vector<cd> weights,
                              std::string tag = "weight-table");

// ---- validation and evaluation ------------------------------------------

void validate(const SpinModel& m);
void validate_config(const SpinModel& m, const Configuration& c);

/// Row-major index of the interaction's local configuration (table lookup).
std::size_t table_index(const Interaction& it, const Configuration& c, int q);

/// Index of the interaction's quantum digit under its qudit map.
std::size_t qudit_index(const Interaction& it, const Configuration& c, int q);

std::size_t qudit_dim(const Interaction& it, int q);

/// Per-interaction Boltzmann weight tables: exp(-beta*h) for energy tables,
/// the stored entries for weight tables.
std::vector<std::vector<cd>> boltzmann_tables(const SpinModel& m);

/// Total energy of a configuration. Errors with HardConstraintPresent if any
/// interaction stores weights directly (those carry no finite energy).
cd evaluate_energy(const SpinModel& m, const Configuration& c);

/// Product of per-interaction Boltzmann weights for one configuration.
cd config_weight(const SpinModel& m, const Configuration& c);

inline constexpr double kDefaultMaxBits = 24.0;

/// Exact partition function by exhaustive enumeration.
///
/// Configurations are visited depth-first in lexicographic order (variable 0
/// slowest); each interaction's weight folds into the running product at its
/// last variable. Subtree sums below a fixed prefix depth are reduced in
/// prefix order, so the result is bit-identical no matter how many workers
/// run. Errors with TooLarge when n*log2(q) exceeds max_bits.
cd partition_function_exact(const SpinModel& m, double max_bits = kDefaultMaxBits);

/// Single-threaded reference with the identical summation order. Kept for
/// tests and the kernel benchmark; must agree with the parallel path bit for
/// bit.
cd partition_function_serial(const SpinModel& m, double max_bits = kDefaultMaxBits);

}  // namespace zspin
