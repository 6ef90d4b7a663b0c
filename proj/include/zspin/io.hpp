#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zspin/cdt.hpp"
#include "zspin/lattice.hpp"
#include "zspin/model.hpp"
#include "zspin/overlap.hpp"

#include "json.hpp"

namespace zspin {

// ---- deterministic JSON output -------------------------------------------
// Output documents are emitted with insertion-ordered keys and numbers
// printed with 17 significant digits, so identical runs produce identical
// bytes.

class JsonOut {
 public:
  static JsonOut obj();
  static JsonOut arr();
  static JsonOut num(double v);
  static JsonOut integer(long long v);
  static JsonOut str(std::string v);
  static JsonOut boolean(bool v);
  static JsonOut complex(cd v);  // {"re": ..., "im": ...}

  JsonOut& add(const std::string& key, JsonOut v);  // object member
  JsonOut& push(JsonOut v);                         // array element
  std::string dump(bool pretty = false) const;

 private:
  enum class T { Null, Bool, Int, Real, Str, Arr, Obj };
  T t_ = T::Null;
  bool b_ = false;
  long long i_ = 0;
  double d_ = 0.0;
  std::string s_;
  std::vector<JsonOut> arr_;
  std::vector<std::pair<std::string, JsonOut>> obj_;
  void write(std::string& out, bool pretty, int depth) const;
};

std::string format_g17(double v);

// ---- parsing helpers ------------------------------------------------------

using json = nlohmann::json;

/// Accepts a bare number (imaginary part zero) or an {re, im} object.
cd parse_complex(const json& j);

json load_json_file(const std::string& path);

// ---- model files ----------------------------------------------------------

SpinModel model_from_json(const json& j);
JsonOut model_to_json(const SpinModel& m);

// ---- lattice files --------------------------------------------------------

bool is_lattice_json(const json& j);
LatticeSpec lattice_from_json(const json& j);

/// Load either kind of file; lattice descriptions are converted to their
/// spin model.
SpinModel load_model_or_lattice(const std::string& path);

/// Family-name construction of spin models. Families: ising-graph,
/// potts-graph, six-vertex-2d, vertex-2d-general, edge-2d, lgt-3d-temporal.
SpinModel instantiate_family(const std::string& family, const json& params);

// ---- fork arrays and triangulations ---------------------------------------

ForkArray fork_array_from_text(const std::string& text);
ForkArray load_fork_array(const std::string& path);
std::string fork_array_to_text(const ForkArray& fa);

JsonOut triangulation_to_json(const FoliatedTriangulation& tri);
FoliatedTriangulation triangulation_from_json(const json& j);

// ---- projections -----------------------------------------------------------

std::vector<Projection> projections_from_json(const json& j);

JsonOut state_to_json(const StateVector& sv);

}  // namespace zspin
