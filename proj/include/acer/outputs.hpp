#pragma once

// Graph emitters (DOT, JSON, CSV), the JSON reader used for comparison,
// pairwise edge-overlap matrices, and the receiver-kind census.

#include "acer/model.hpp"
#include "acer/syntax.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace acer {

inline constexpr std::string_view kGraphSchemaVersion = "acer-graph/1";

enum class DotMode {
  keep_dispatch,       // subtype-dispatch vertices stay distinct
  collapse_inherited,  // edges rewritten to the defining method
};

std::string emit_dot(const CallGraph& graph, DotMode mode = DotMode::keep_dispatch);
std::string emit_json(const CallGraph& graph,
                      const nlohmann::ordered_json& config = nlohmann::ordered_json::object());
std::string emit_csv(const CallGraph& graph);

class SchemaError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LoadedGraph {
  struct Node {
    std::string id;
    std::string package;
    std::vector<std::string> class_path;
    std::string name;
    int arity = 0;
    bool synthetic = false;
  };
  struct Edge {
    std::string src, dst, defined_in, file;
    uint32_t row = 0, col = 0;
    auto operator<=>(const Edge&) const = default;
  };
  struct Unresolved {
    std::string file;
    uint32_t row = 0, col = 0;
    std::string name;
    int arity = 0;
    std::string reason;
    auto operator<=>(const Unresolved&) const = default;
  };

  std::string schema_version;
  nlohmann::ordered_json config;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<Unresolved> unresolved;
};

// Throws SchemaError on malformed input or schema_version mismatch.
LoadedGraph parse_graph_json(std::string_view text);

// Edge set projected to (source id, defining-method id). The site and the
// dispatch component are dropped so generators with different dispatch
// emission compare fairly.
using ProjectedEdges = std::set<std::pair<std::string, std::string>>;
ProjectedEdges project_edges(const CallGraph& graph);
ProjectedEdges project_edges(const LoadedGraph& graph);

struct OverlapMatrix {
  std::vector<std::string> labels;
  std::vector<std::size_t> diagonal;       // projected edge count per generator
  std::vector<std::vector<double>> cells;  // cells[i][j]: fraction of i's edges also in j
};

OverlapMatrix overlap(const std::vector<std::pair<std::string, ProjectedEdges>>& named_sets);
// Table layout: diagonal counts, off-diagonal percentages with one decimal.
std::string format_overlap(const OverlapMatrix& matrix);

struct ReceiverCensus {
  static constexpr std::size_t kKinds = 6;  // one per ReceiverKind::Tag
  std::array<std::size_t, kKinds> counts{};
  std::size_t total = 0;

  std::size_t count(ReceiverKind::Tag tag) const {
    return counts[static_cast<std::size_t>(tag)];
  }
};

// Classifies every method_invocation receiver in the forest, once each;
// object creations are excluded.
ReceiverCensus census(const Forest& forest);
std::string format_census(const ReceiverCensus& c);

}  // namespace acer
