#include "speclink/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace speclink::io {

namespace {

std::string fmt(double v, const char* spec) {
  if (!std::isfinite(v)) throw NumericalError("cannot serialize non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string quoted(const std::string& s) {
  // Names here are identifiers; escape the two characters JSON requires
  // for them anyway.
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string complex_json(const std::complex<double>& z) {
  return "[" + json_double(z.real()) + "," + json_double(z.imag()) + "]";
}

template <typename Seq, typename F>
std::string join(const Seq& seq, F&& render) {
  std::string out = "[";
  bool first = true;
  for (const auto& item : seq) {
    if (!first) out += ",";
    first = false;
    out += render(item);
  }
  out += "]";
  return out;
}

std::string vector_json(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += json_double(v[i]);
  }
  out += "]";
  return out;
}

std::string row_json(const Eigen::MatrixXd& m, Eigen::Index row) {
  std::string out = "[";
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (j) out += ",";
    out += json_double(m(row, j));
  }
  out += "]";
  return out;
}

std::string matrix_rows_json(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ",";
    out += row_json(m, i);
  }
  out += "]";
  return out;
}

std::string basis_json(const BasisSpec& basis) {
  std::string out = "{\"dims\":" + std::to_string(basis.dims()) + ",\"sizes\":[";
  for (std::size_t d = 0; d < basis.sizes.size(); ++d) {
    if (d) out += ",";
    out += std::to_string(basis.sizes[d]);
  }
  out += "]}";
  return out;
}

const char* provenance_name(Provenance p) {
  return p == Provenance::equation_driven ? "equation_driven" : "data_driven";
}

// --- parse helpers -------------------------------------------------------

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw DataError(std::string("missing JSON field '") + key + "'");
  return *it;
}

double number(const nlohmann::json& j, const char* key) {
  const nlohmann::json& f = field(j, key);
  if (!f.is_number()) throw DataError(std::string("JSON field '") + key + "' is not a number");
  return f.get<double>();
}

Eigen::VectorXd vector_from(const nlohmann::json& j) {
  if (!j.is_array()) throw DataError("expected a JSON array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& x : j) {
    if (!x.is_number()) throw DataError("expected a JSON array of numbers");
    v[i++] = x.get<double>();
  }
  return v;
}

}  // namespace

std::string json_double(double v) { return fmt(v, "%.17g"); }

std::string to_json(const PdeSpec& spec) {
  std::string out = "{\"name\":" + quoted(spec.name) + ",\"dims\":" + std::to_string(spec.dims) +
                    ",\"terms\":";
  out += join(spec.terms, [](const PdeTerm& t) {
    std::string term = "{\"coeff\":" + json_double(t.coefficient) + ",\"orders\":[";
    for (std::size_t d = 0; d < t.derivative_orders.size(); ++d) {
      if (d) term += ",";
      term += std::to_string(t.derivative_orders[d]);
    }
    term += "]}";
    return term;
  });
  out += "}";
  return out;
}

PdeSpec pde_from_json(const nlohmann::json& j) {
  PdeSpec spec;
  spec.name = field(j, "name").get<std::string>();
  spec.dims = field(j, "dims").get<int>();
  for (const auto& t : field(j, "terms")) {
    PdeTerm term;
    term.coefficient = number(t, "coeff");
    for (const auto& o : field(t, "orders")) term.derivative_orders.push_back(o.get<int>());
    spec.terms.push_back(std::move(term));
  }
  spec.validate();
  return spec;
}

BasisSpec basis_from_json(const nlohmann::json& j) {
  std::vector<Eigen::Index> sizes;
  for (const auto& m : field(j, "sizes")) sizes.push_back(m.get<Eigen::Index>());
  BasisSpec basis(std::move(sizes));
  if (field(j, "dims").get<int>() != basis.dims())
    throw DataError("basis dims field disagrees with sizes length");
  return basis;
}

std::string to_json(const Trajectory& traj) {
  std::string out = "{\"basis\":" + basis_json(traj.basis) + ",\"dt\":" + json_double(traj.dt) +
                    ",\"pde_name\":" + quoted(traj.pde_name) + ",\"snapshots\":[";
  for (Eigen::Index k = 0; k < traj.snapshots.cols(); ++k) {
    if (k) out += ",";
    out += vector_json(traj.snapshots.col(k));
  }
  out += "]}";
  return out;
}

Trajectory trajectory_from_json(const nlohmann::json& j) {
  Trajectory traj;
  traj.basis = basis_from_json(field(j, "basis"));
  traj.dt = number(j, "dt");
  traj.pde_name = field(j, "pde_name").get<std::string>();
  const auto& snaps = field(j, "snapshots");
  if (!snaps.is_array() || snaps.empty()) throw DataError("trajectory has no snapshots");
  const Eigen::Index p = traj.basis.total_size();
  traj.snapshots.resize(p, static_cast<Eigen::Index>(snaps.size()));
  Eigen::Index k = 0;
  for (const auto& row : snaps) {
    Eigen::VectorXd v = vector_from(row);
    if (v.size() != p) throw DataError("snapshot length does not match basis size");
    traj.snapshots.col(k++) = v;
  }
  return traj;
}

std::string to_json(const KoopmanMatrix& k) {
  return "{\"basis\":" + basis_json(k.basis) + ",\"dt\":" + json_double(k.dt) +
         ",\"provenance\":" + quoted(provenance_name(k.provenance)) +
         ",\"entries\":" + matrix_rows_json(k.entries) + "}";
}

KoopmanMatrix koopman_from_json(const nlohmann::json& j) {
  KoopmanMatrix k;
  k.basis = basis_from_json(field(j, "basis"));
  k.dt = number(j, "dt");
  const std::string prov = field(j, "provenance").get<std::string>();
  if (prov == "equation_driven")
    k.provenance = Provenance::equation_driven;
  else if (prov == "data_driven")
    k.provenance = Provenance::data_driven;
  else
    throw DataError("unknown provenance '" + prov + "'");
  const auto& rows = field(j, "entries");
  const Eigen::Index p = k.basis.total_size();
  if (static_cast<Eigen::Index>(rows.size()) != p)
    throw DataError("matrix row count does not match basis size");
  k.entries.resize(p, p);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::VectorXd v = vector_from(row);
    if (v.size() != p) throw DataError("matrix row length does not match basis size");
    k.entries.row(i++) = v.transpose();
  }
  if (!(k.dt > 0.0)) throw DataError("matrix dt must be positive");
  return k;
}

std::string to_json(const SpectralDecomposition& dec) {
  std::string out = "{\"eigenvalues\":";
  std::string vals = "[";
  for (Eigen::Index i = 0; i < dec.size(); ++i) {
    if (i) vals += ",";
    vals += complex_json(dec.eigenvalues[i]);
  }
  vals += "]";
  out += vals;
  out += ",\"eigenvectors\":[";
  for (Eigen::Index jcol = 0; jcol < dec.size(); ++jcol) {
    if (jcol) out += ",";
    out += "[";
    for (Eigen::Index i = 0; i < dec.size(); ++i) {
      if (i) out += ",";
      out += complex_json(dec.eigenvectors(i, jcol));
    }
    out += "]";
  }
  out += "],\"residuals\":" + vector_json(dec.residuals) + "}";
  return out;
}

std::string to_json(const ExperimentConfig& config) {
  std::string out = "{\"basis\":" + basis_json(config.basis) + ",\"dt\":" +
                    json_double(config.dt) + ",\"T\":" + json_double(config.horizon) +
                    ",\"params\":{\"c_x\":" + json_double(config.params.c_x) +
                    ",\"c_y\":" + json_double(config.params.c_y) +
                    ",\"nu\":" + json_double(config.params.nu) + "}";
  if (!config.candidates.empty()) {
    out += ",\"candidates\":";
    out += join(config.candidates, [](const PdeSpec& s) { return to_json(s); });
  }
  out += ",\"seeds\":";
  out += join(config.seeds, [](std::uint64_t s) { return std::to_string(s); });
  out += ",\"ic_decay\":" + json_double(config.ic_decay);
  out += ",\"include_gaussian\":";
  out += config.include_gaussian ? "true" : "false";
  out += ",\"gaussian\":{\"sigma\":" + json_double(config.gaussian_ic.sigma) +
         ",\"amplitude\":" + json_double(config.gaussian_ic.amplitude) + ",\"center\":";
  Eigen::VectorXd center = config.gaussian_ic.center.size()
                               ? config.gaussian_ic.center
                               : Eigen::VectorXd::Zero(config.basis.dims());
  out += vector_json(center);
  out += "}}";
  return out;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig config;
  if (j.contains("basis")) config.basis = basis_from_json(j["basis"]);
  if (j.contains("dt")) config.dt = number(j, "dt");
  if (j.contains("T")) config.horizon = number(j, "T");
  if (j.contains("params")) {
    const auto& p = j["params"];
    if (p.contains("c_x")) config.params.c_x = number(p, "c_x");
    if (p.contains("c_y")) config.params.c_y = number(p, "c_y");
    if (p.contains("nu")) config.params.nu = number(p, "nu");
  }
  if (j.contains("candidates"))
    for (const auto& c : j["candidates"]) config.candidates.push_back(pde_from_json(c));
  if (j.contains("seeds")) {
    config.seeds.clear();
    for (const auto& s : j["seeds"]) config.seeds.push_back(s.get<std::uint64_t>());
  }
  if (j.contains("ic_decay")) config.ic_decay = number(j, "ic_decay");
  if (j.contains("include_gaussian")) config.include_gaussian = j["include_gaussian"].get<bool>();
  if (j.contains("gaussian")) {
    const auto& g = j["gaussian"];
    if (g.contains("sigma")) config.gaussian_ic.sigma = number(g, "sigma");
    if (g.contains("amplitude")) config.gaussian_ic.amplitude = number(g, "amplitude");
    if (g.contains("center")) config.gaussian_ic.center = vector_from(g["center"]);
  }
  config.validate();
  return config;
}

std::string to_csv(const ConfusionMatrix& m) {
  std::string out = "candidate\\true";
  for (const std::string& name : m.true_names) out += "," + name;
  out += "\n";
  for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
    out += m.candidate_names[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m.values.cols(); ++j) out += "," + fmt(m.values(i, j), "%.9g");
    out += "\n";
  }
  return out;
}

namespace {

std::string table_json(const ConfusionMatrix& m) {
  std::string out = "{\"metric\":" + quoted(m.metric) + ",\"candidates\":";
  out += join(m.candidate_names, quoted);
  out += ",\"true\":";
  out += join(m.true_names, quoted);
  out += ",\"values\":" + matrix_rows_json(m.values) + "}";
  return out;
}

std::string flags_json(const std::vector<bool>& flags) {
  std::string out = "[";
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (i) out += ",";
    out += flags[i] ? "true" : "false";
  }
  out += "]";
  return out;
}

std::string tables_json(const ConfusionTables& tables) {
  std::string out = "{\"d\":" + table_json(tables.d) + ",\"s\":" + table_json(tables.s) +
                    ",\"frobenius\":" + table_json(tables.frobenius);
  out += ",\"diagonal_dominance\":{\"d_min_on_diagonal\":" +
         flags_json(diagonal_best_per_column(tables.d, true)) +
         ",\"s_max_on_diagonal\":" + flags_json(diagonal_best_per_column(tables.s, false)) +
         ",\"frobenius_min_on_diagonal\":" +
         flags_json(diagonal_best_per_column(tables.frobenius, true)) + "}}";
  return out;
}

}  // namespace

std::string detail_json(const ExperimentConfig& config, const ConfusionResult& result) {
  std::string out = "{\"config\":" + to_json(config);
  out += ",\"random_smooth\":" + tables_json(result.averaged);
  if (result.gaussian) out += ",\"gaussian\":" + tables_json(*result.gaussian);
  out += ",\"cells\":";
  out += join(result.cells, [](const ConfusionCell& c) {
    return "{\"true\":" + quoted(c.true_name) + ",\"seed\":" + std::to_string(c.seed) +
           ",\"candidate\":" + quoted(c.candidate_name) + ",\"d\":" + json_double(c.d) +
           ",\"s\":" + json_double(c.s) + ",\"frobenius\":" + json_double(c.frobenius) + "}";
  });
  out += "}";
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << content;
  if (!out) throw DataError("write failed: " + path.string());
}

nlohmann::json parse_json_file(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace speclink::io
