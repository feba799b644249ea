#include "mflab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mflab/model.hpp"

namespace mflab {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path, what);
}

void require_keys(const json& j, const std::string& path,
                  const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown key");
  }
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

// Complex scalars are [re, im] pairs; a bare number is accepted as real.
Complex get_complex(const json& j, const std::string& path) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2)
    fail(path, "expected [re, im] or a number");
  return Complex(get_number(j[0], path + "[0]"), get_number(j[1], path + "[1]"));
}

Vector get_vector(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) =
        get_complex(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Matrix get_matrix(const json& j, const std::string& path, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    fail(path, "expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string rpath = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      fail(rpath, "expected " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c)
      m(r, c) = get_complex(row[static_cast<std::size_t>(c)],
                            rpath + "[" + std::to_string(c) + "]");
  }
  return m;
}

json put_complex(Complex z) { return json::array({z.real(), z.imag()}); }

json put_vector(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(put_complex(v(i)));
  return a;
}

json put_matrix(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(put_complex(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

ModelSpec parse_model(const json& j) {
  require_keys(j, "model", {"d", "h0", "interaction"});
  if (!j.contains("d")) fail("model.d", "missing");
  const int d = get_int(j["d"], "model.d");
  if (d < 1) fail("model.d", "must be >= 1");

  Matrix h0 = Matrix::Zero(d, d);
  if (j.contains("h0")) h0 = get_matrix(j["h0"], "model.h0", d, d);

  SectorOperator kernel = SectorOperator::zero(2, d);
  if (j.contains("interaction")) {
    const json& ji = j["interaction"];
    require_keys(ji, "model.interaction", {"type", "g", "entries"});
    if (!ji.contains("type") || !ji["type"].is_string())
      fail("model.interaction.type", "expected a string");
    const std::string type = ji["type"].get<std::string>();
    if (type == "onsite") {
      double g = 1.0;
      if (ji.contains("g")) g = get_number(ji["g"], "model.interaction.g");
      if (ji.contains("entries"))
        fail("model.interaction.entries", "not valid for type \"onsite\"");
      kernel = onsite_pair_kernel(d, g);
    } else if (type == "kernel") {
      if (!ji.contains("entries")) fail("model.interaction.entries", "missing");
      if (ji.contains("g"))
        fail("model.interaction.g", "not valid for type \"kernel\"");
      const int dim = kernel.dim();
      kernel.m = get_matrix(ji["entries"], "model.interaction.entries", dim, dim);
    } else {
      fail("model.interaction.type", "must be \"onsite\" or \"kernel\"");
    }
  }

  try {
    return ModelSpec::make(std::move(h0), std::move(kernel));
  } catch (const std::invalid_argument& e) {
    fail("model", e.what());
  }
}

void parse_state(const json& j, RunConfig& cfg) {
  require_keys(j, "state", {"family", "generators", "alpha"});
  if (j.contains("family")) {
    if (!j["family"].is_string()) fail("state.family", "expected a string");
    cfg.family = j["family"].get<std::string>();
  }
  static const std::set<std::string> families = {"product", "w", "ghz", "twin",
                                                 "mixture"};
  if (!families.count(cfg.family))
    fail("state.family", "unknown family \"" + cfg.family + "\"");

  if (j.contains("generators")) {
    const json& jg = j["generators"];
    if (!jg.is_array() || jg.empty() || jg.size() > 2)
      fail("state.generators", "expected 1 or 2 vectors");
    cfg.generators.clear();
    for (std::size_t i = 0; i < jg.size(); ++i)
      cfg.generators.push_back(
          get_vector(jg[i], "state.generators[" + std::to_string(i) + "]"));
  }

  if (j.contains("alpha")) {
    const json& ja = j["alpha"];
    if (ja.is_string()) {
      const std::string s = ja.get<std::string>();
      if (s == "sqrt_n")
        cfg.alpha_rule = AlphaRule::sqrt_n;
      else if (s == "n")
        cfg.alpha_rule = AlphaRule::linear_n;
      else
        fail("state.alpha", "string form must be \"sqrt_n\" or \"n\"");
    } else {
      cfg.alpha = get_number(ja, "state.alpha");
      cfg.alpha_rule = AlphaRule::fixed;
      if (cfg.alpha < 1.0) fail("state.alpha", "must be >= 1");
    }
  }
}

void parse_sweep(const json& j, RunConfig& cfg) {
  require_keys(j, "sweep", {"n", "p", "times"});
  auto int_list = [](const json& ja, const std::string& path, int lo) {
    if (!ja.is_array() || ja.empty()) fail(path, "expected a non-empty array");
    std::vector<int> out;
    for (std::size_t i = 0; i < ja.size(); ++i) {
      const int v = get_int(ja[i], path + "[" + std::to_string(i) + "]");
      if (v < lo)
        fail(path + "[" + std::to_string(i) + "]",
             "must be >= " + std::to_string(lo));
      out.push_back(v);
    }
    return out;
  };
  if (j.contains("n")) cfg.n_values = int_list(j["n"], "sweep.n", 1);
  if (j.contains("p")) cfg.p_values = int_list(j["p"], "sweep.p", 1);
  if (j.contains("times")) {
    const json& jt = j["times"];
    if (!jt.is_array() || jt.empty())
      fail("sweep.times", "expected a non-empty array");
    cfg.times.clear();
    for (std::size_t i = 0; i < jt.size(); ++i)
      cfg.times.push_back(
          get_number(jt[i], "sweep.times[" + std::to_string(i) + "]"));
  }
}

void parse_numerics(const json& j, RunConfig& cfg) {
  require_keys(j, "numerics", {"dt", "quad_points", "gauss_nodes", "kmax"});
  if (j.contains("dt")) {
    cfg.numerics.dt = get_number(j["dt"], "numerics.dt");
    if (!(cfg.numerics.dt > 0)) fail("numerics.dt", "must be > 0");
  }
  if (j.contains("quad_points")) {
    cfg.numerics.quad_points = get_int(j["quad_points"], "numerics.quad_points");
    if (cfg.numerics.quad_points < 2) fail("numerics.quad_points", "must be >= 2");
  }
  if (j.contains("gauss_nodes")) {
    cfg.numerics.gauss_nodes = get_int(j["gauss_nodes"], "numerics.gauss_nodes");
    if (cfg.numerics.gauss_nodes < 1) fail("numerics.gauss_nodes", "must be >= 1");
  }
  if (j.contains("kmax")) {
    cfg.numerics.kmax = get_int(j["kmax"], "numerics.kmax");
    if (cfg.numerics.kmax < 0 || cfg.numerics.kmax > 4)
      fail("numerics.kmax", "must be in [0, 4]");
  }
}

void parse_output(const json& j, RunConfig& cfg) {
  require_keys(j, "output", {"rates", "slopes"});
  auto str = [](const json& js, const std::string& path) {
    if (!js.is_string()) fail(path, "expected a string");
    return js.get<std::string>();
  };
  if (j.contains("rates")) cfg.output.rates = str(j["rates"], "output.rates");
  if (j.contains("slopes")) cfg.output.slopes = str(j["slopes"], "output.slopes");
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", e.what());
  }
  require_keys(j, "<root>", {"model", "state", "sweep", "numerics", "output"});

  RunConfig cfg;
  cfg.family = "product";
  cfg.model = j.contains("model") ? parse_model(j["model"]) : dimer_model();
  if (j.contains("state")) parse_state(j["state"], cfg);
  if (j.contains("sweep")) parse_sweep(j["sweep"], cfg);
  if (j.contains("numerics")) parse_numerics(j["numerics"], cfg);
  if (j.contains("output")) parse_output(j["output"], cfg);

  const std::size_t need = cfg.family == "product" ? 1u : 2u;
  if (cfg.generators.empty()) {
    if (need == 2 && cfg.model.d < 2)
      fail("state.generators", "family \"" + cfg.family + "\" needs d >= 2");
    for (std::size_t i = 0; i < need; ++i) {
      Vector e = Vector::Zero(cfg.model.d);
      e(static_cast<Eigen::Index>(i)) = 1.0;
      cfg.generators.push_back(e);
    }
  }
  for (std::size_t i = 0; i < cfg.generators.size(); ++i) {
    if (cfg.generators[i].size() != cfg.model.d)
      fail("state.generators[" + std::to_string(i) + "]",
           "length must equal model.d = " + std::to_string(cfg.model.d));
  }
  if (cfg.generators.size() != need)
    fail("state.generators", "family \"" + cfg.family + "\" needs " +
                                 std::to_string(need) + " generator(s)");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const RunConfig& cfg) {
  json j;
  j["model"]["d"] = cfg.model.d;
  j["model"]["h0"] = put_matrix(cfg.model.h0);
  j["model"]["interaction"] = {{"type", "kernel"},
                               {"entries", put_matrix(cfg.model.pair_kernel.m)}};
  j["state"]["family"] = cfg.family;
  json gens = json::array();
  for (const auto& g : cfg.generators) gens.push_back(put_vector(g));
  j["state"]["generators"] = gens;
  switch (cfg.alpha_rule) {
    case AlphaRule::fixed: j["state"]["alpha"] = cfg.alpha; break;
    case AlphaRule::sqrt_n: j["state"]["alpha"] = "sqrt_n"; break;
    case AlphaRule::linear_n: j["state"]["alpha"] = "n"; break;
  }
  j["sweep"]["n"] = cfg.n_values;
  j["sweep"]["p"] = cfg.p_values;
  j["sweep"]["times"] = cfg.times;
  j["numerics"] = {{"dt", cfg.numerics.dt},
                   {"quad_points", cfg.numerics.quad_points},
                   {"gauss_nodes", cfg.numerics.gauss_nodes},
                   {"kmax", cfg.numerics.kmax}};
  j["output"] = {{"rates", cfg.output.rates}, {"slopes", cfg.output.slopes}};
  return j.dump(2);
}

SweepPlan RunConfig::plan(int threads) const {
  SweepPlan p;
  p.model = model;
  p.family = family;
  p.generators = generators;
  p.alpha = alpha;
  p.alpha_rule = alpha_rule;
  p.n_values = n_values;
  p.p_values = p_values;
  p.times = times;
  p.flow.dt = numerics.dt;
  p.quad_points = numerics.quad_points;
  p.threads = threads;
  return p;
}

}  // namespace mflab
