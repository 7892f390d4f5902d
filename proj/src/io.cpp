#include "bnmoo/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace bnmoo {

using nlohmann::json;

namespace {

std::vector<std::string> split_csv_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  for (int v = 0; v < data.variables(); ++v)
    out << (v ? "," : "") << 'V' << v + 1;
  out << '\n';
  for (int s = 0; s < data.samples(); ++s) {
    for (int v = 0; v < data.variables(); ++v)
      out << (v ? "," : "") << static_cast<int>(data.at(s, v));
    out << '\n';
  }
}

Dataset read_dataset_csv(std::istream& in, const std::vector<int>* arities) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("dataset CSV: missing header");
  const auto header = split_csv_line(line);
  const int n = static_cast<int>(header.size());
  if (n == 0 || (n == 1 && trim(header[0]).empty()))
    throw IoError("dataset CSV: empty header");

  std::vector<std::uint8_t> cells;
  int m = 0;
  int max_seen = 0;
  for (int lineno = 2; std::getline(in, line); ++lineno) {
    if (trim(line).empty()) continue;
    const auto row = split_csv_line(line);
    if (static_cast<int>(row.size()) != n)
      throw IoError("dataset CSV: line " + std::to_string(lineno) + " has " +
                    std::to_string(row.size()) + " cells, expected " +
                    std::to_string(n));
    for (const auto& raw : row) {
      const std::string cell = trim(raw);
      int value = -1;
      const auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || value < 0 ||
          value > 254)
        throw IoError("dataset CSV: bad cell '" + cell + "' on line " +
                      std::to_string(lineno));
      max_seen = std::max(max_seen, value);
      cells.push_back(static_cast<std::uint8_t>(value));
    }
    ++m;
  }
  if (m == 0) throw IoError("dataset CSV: no samples");
  std::vector<int> ar;
  if (arities) {
    ar = *arities;
  } else {
    ar.assign(n, 2);
    for (std::size_t i = 0; i < cells.size(); ++i)
      ar[i % n] = std::max(ar[i % n], cells[i] + 1);
  }
  try {
    return Dataset(m, n, std::move(ar), cells);
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("dataset CSV: ") + e.what());
  }
}

json dag_to_json(const Dag& dag, const std::vector<int>& arities) {
  json edges = json::array();
  for (const auto& e : dag.edges()) edges.push_back({e.parent, e.child});
  return {{"n", dag.size()}, {"arities", arities}, {"edges", std::move(edges)}};
}

json network_to_json(const BayesianNetwork& bn) {
  json j = dag_to_json(bn.dag, bn.arities);
  json cpts = json::array();
  for (const auto& c : bn.cpts) {
    json rows = json::array();
    for (std::size_t r = 0; r < c.rows(); ++r) {
      json row = json::array();
      for (int k = 0; k < c.arity; ++k) row.push_back(c.prob(r, k));
      rows.push_back(std::move(row));
    }
    cpts.push_back({{"node", c.node}, {"parents", c.parents}, {"table", std::move(rows)}});
  }
  j["cpts"] = std::move(cpts);
  return j;
}

NetworkFile network_from_json(const json& j) {
  try {
    NetworkFile f;
    const int n = j.at("n").get<int>();
    if (n < 1) throw IoError("network JSON: n must be >= 1");
    f.arities = j.contains("arities") ? j.at("arities").get<std::vector<int>>()
                                      : std::vector<int>(n, 2);
    if (static_cast<int>(f.arities.size()) != n)
      throw IoError("network JSON: arities length differs from n");
    EdgeList edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw IoError("network JSON: edge must be a [parent, child] pair");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    f.dag = Dag::from_edges(n, edges);
    if (j.contains("cpts") && !j.at("cpts").is_null()) {
      BayesianNetwork bn{f.dag, f.arities, {}};
      bn.cpts.resize(n);
      for (const auto& jc : j.at("cpts")) {
        const int node = jc.at("node").get<int>();
        if (node < 0 || node >= n) throw IoError("network JSON: CPT node out of range");
        Cpt& c = bn.cpts[node];
        c.node = node;
        c.arity = f.arities[node];
        c.parents = jc.at("parents").get<std::vector<int>>();
        c.parent_arities.clear();
        for (int p : c.parents) {
          if (p < 0 || p >= n) throw IoError("network JSON: CPT parent out of range");
          c.parent_arities.push_back(f.arities[p]);
        }
        c.table.clear();
        for (const auto& row : jc.at("table"))
          for (const auto& x : row) c.table.push_back(x.get<double>());
      }
      bn.validate();
      f.network = std::move(bn);
    }
    return f;
  } catch (const json::exception& e) {
    throw IoError(std::string("network JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("network JSON: ") + e.what());
  } catch (const CycleError& e) {
    throw IoError(std::string("network JSON: ") + e.what());
  }
}

std::string to_dot(const Dag& dag, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (int v = 0; v < dag.size(); ++v) out << "  V" << v + 1 << ";\n";
  for (const auto& e : dag.edges())
    out << "  V" << e.parent + 1 << " -> V" << e.child + 1 << ";\n";
  out << "}\n";
  return out.str();
}

json front_to_json(const ParetoFront& front) {
  json arr = json::array();
  for (const auto& m : front.members) {
    json edges = json::array();
    for (const auto& e : m.dag.edges()) edges.push_back({e.parent, e.child});
    json crowd = nullptr;  // +inf is not representable in JSON
    if (m.crowding && std::isfinite(*m.crowding)) crowd = *m.crowding;
    arr.push_back({{"edges", std::move(edges)},
                   {"f1", m.objectives.log_likelihood},
                   {"f2", m.objectives.arcs},
                   {"rank", m.rank.value_or(1)},
                   {"crowding", crowd}});
  }
  return arr;
}

ParetoFront front_from_json(const json& j, int n) {
  try {
    ParetoFront front;
    for (const auto& jm : j) {
      Individual ind;
      EdgeList edges;
      for (const auto& e : jm.at("edges")) edges.push_back({e[0].get<int>(), e[1].get<int>()});
      ind.dag = Dag::from_edges(n, edges);
      ind.genome = encode(ind.dag);
      ind.objectives = {jm.at("f1").get<double>(), jm.at("f2").get<int>()};
      if (ind.objectives.arcs != static_cast<int>(ind.dag.edge_count()))
        throw IoError("front JSON: f2 does not match the edge count");
      ind.rank = jm.value("rank", 1);
      const auto& c = jm.at("crowding");
      ind.crowding = c.is_null() ? std::numeric_limits<double>::infinity()
                                 : c.get<double>();
      front.members.push_back(std::move(ind));
    }
    return front;
  } catch (const json::exception& e) {
    throw IoError(std::string("front JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("front JSON: ") + e.what());
  }
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& out, const std::vector<GenerationStats>& trace) {
  out << "generation,best_f1,median_f1,best_f2,front_size\n";
  for (const auto& s : trace)
    out << s.generation << ',' << format_double(s.best_f1) << ','
        << format_double(s.median_f1) << ',' << s.best_f2 << ',' << s.front_size
        << '\n';
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

json read_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

Dataset read_dataset_file(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  try {
    return read_dataset_csv(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace bnmoo
