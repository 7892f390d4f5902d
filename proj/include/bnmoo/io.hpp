#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnmoo/dag.hpp"
#include "bnmoo/dataset.hpp"
#include "bnmoo/hillclimb.hpp"
#include "bnmoo/network.hpp"
#include "bnmoo/nsga2.hpp"

namespace bnmoo {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dataset CSV: header V1,...,Vn then one row of category indices per sample.
void write_dataset_csv(std::ostream& out, const Dataset& data);
/// Arities are max(observed)+1, at least 2, unless `arities` is given.
Dataset read_dataset_csv(std::istream& in, const std::vector<int>* arities =
                                               nullptr);

// Network JSON: {"n", "arities", "edges": [[p, c]], "cpts"?}.
nlohmann::json dag_to_json(const Dag& dag, const std::vector<int>& arities);
nlohmann::json network_to_json(const BayesianNetwork& bn);
/// Reads a structure, and CPTs when present.
struct NetworkFile {
  Dag dag;
  std::vector<int> arities;
  std::optional<BayesianNetwork> network;
};
NetworkFile network_from_json(const nlohmann::json& j);

/// DOT with nodes labeled V1..Vn.
std::string to_dot(const Dag& dag, const std::string& name = "G");

// Front export: [{edges, f1, f2, rank, crowding}].
nlohmann::json front_to_json(const ParetoFront& front);
ParetoFront front_from_json(const nlohmann::json& j, int n);

void write_trace_csv(std::ostream& out,
                     const std::vector<GenerationStats>& trace);

/// Formats a double so that reading it back gives the same value.
std::string format_double(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);
nlohmann::json read_json_file(const std::filesystem::path& path);
Dataset read_dataset_file(const std::filesystem::path& path);

}  // namespace bnmoo
