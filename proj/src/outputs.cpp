#include "acer/outputs.hpp"

#include "acer/java/resolve.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace acer {
namespace {

using nlohmann::ordered_json;

std::string quote_dot(const std::string& id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", fraction * 100.0);
  return buf;
}

}  // namespace

std::string emit_dot(const CallGraph& graph, DotMode mode) {
  std::set<std::string> nodes;
  std::set<std::pair<std::string, std::string>> edges;
  for (const GraphEdge& e : graph.edges()) {
    const std::string& dst = mode == DotMode::collapse_inherited ? e.defined_in_id : e.target_id;
    nodes.insert(e.src_id);
    nodes.insert(dst);
    edges.insert({e.src_id, dst});
  }

  if (nodes.empty() && edges.empty()) return "digraph acer {}\n";

  std::ostringstream out;
  out << "digraph acer {\n";
  for (const std::string& n : nodes) out << "  " << quote_dot(n) << ";\n";
  for (const auto& [src, dst] : edges)
    out << "  " << quote_dot(src) << " -> " << quote_dot(dst) << ";\n";
  out << "}\n";
  return out.str();
}

std::string emit_json(const CallGraph& graph, const ordered_json& config) {
  ordered_json doc;
  doc["schema_version"] = kGraphSchemaVersion;
  doc["config"] = config;

  ordered_json nodes = ordered_json::array();
  for (const auto& [id, info] : graph.vertices()) {
    ordered_json n;
    n["id"] = id;
    n["package"] = info.package;
    n["class_path"] = info.class_path;
    n["name"] = info.name;
    n["arity"] = info.arity;
    n["synthetic"] = info.synthetic;
    nodes.push_back(std::move(n));
  }
  doc["nodes"] = std::move(nodes);

  ordered_json edges = ordered_json::array();
  for (const GraphEdge& e : graph.edges()) {
    ordered_json edge;
    edge["src"] = e.src_id;
    edge["dst"] = e.target_id;
    edge["defined_in"] = e.defined_in_id;
    edge["file"] = e.site.file;
    edge["row"] = e.row;
    edge["col"] = e.col;
    edges.push_back(std::move(edge));
  }
  doc["edges"] = std::move(edges);

  ordered_json unresolved = ordered_json::array();
  for (const UnresolvedSite& u : graph.unresolved()) {
    ordered_json entry;
    entry["file"] = u.site.file;
    entry["row"] = u.row;
    entry["col"] = u.col;
    entry["name"] = u.name;
    entry["arity"] = u.arity;
    entry["reason"] = u.reason;
    unresolved.push_back(std::move(entry));
  }
  doc["unresolved"] = std::move(unresolved);

  return doc.dump(2) + "\n";
}

std::string emit_csv(const CallGraph& graph) {
  std::ostringstream out;
  out << "src,dst,defined_in,file,row,col\n";
  for (const GraphEdge& e : graph.edges()) {
    out << csv_field(e.src_id) << ',' << csv_field(e.target_id) << ','
        << csv_field(e.defined_in_id) << ',' << csv_field(e.site.file) << ',' << e.row << ','
        << e.col << '\n';
  }
  return out.str();
}

LoadedGraph parse_graph_json(std::string_view text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("graph file is not valid JSON");
  if (!doc.is_object() || !doc.contains("schema_version") ||
      !doc["schema_version"].is_string())
    throw SchemaError("graph file lacks a schema_version");

  LoadedGraph g;
  g.schema_version = doc["schema_version"].get<std::string>();
  if (g.schema_version != kGraphSchemaVersion)
    throw SchemaError("unsupported graph schema: " + g.schema_version);
  if (doc.contains("config")) g.config = doc["config"];

  try {
    for (const auto& n : doc.value("nodes", ordered_json::array())) {
      LoadedGraph::Node node;
      node.id = n.at("id").get<std::string>();
      node.package = n.at("package").get<std::string>();
      node.class_path = n.at("class_path").get<std::vector<std::string>>();
      node.name = n.at("name").get<std::string>();
      node.arity = n.at("arity").get<int>();
      node.synthetic = n.at("synthetic").get<bool>();
      g.nodes.push_back(std::move(node));
    }
    for (const auto& e : doc.value("edges", ordered_json::array())) {
      LoadedGraph::Edge edge;
      edge.src = e.at("src").get<std::string>();
      edge.dst = e.at("dst").get<std::string>();
      edge.defined_in = e.at("defined_in").get<std::string>();
      edge.file = e.at("file").get<std::string>();
      edge.row = e.at("row").get<uint32_t>();
      edge.col = e.at("col").get<uint32_t>();
      g.edges.push_back(std::move(edge));
    }
    for (const auto& u : doc.value("unresolved", ordered_json::array())) {
      LoadedGraph::Unresolved entry;
      entry.file = u.at("file").get<std::string>();
      entry.row = u.at("row").get<uint32_t>();
      entry.col = u.at("col").get<uint32_t>();
      entry.name = u.at("name").get<std::string>();
      entry.arity = u.at("arity").get<int>();
      entry.reason = u.at("reason").get<std::string>();
      g.unresolved.push_back(std::move(entry));
    }
  } catch (const ordered_json::exception& e) {
    throw SchemaError(std::string("malformed graph file: ") + e.what());
  }
  return g;
}

ProjectedEdges project_edges(const CallGraph& graph) {
  ProjectedEdges out;
  for (const GraphEdge& e : graph.edges()) out.insert({e.src_id, e.defined_in_id});
  return out;
}

ProjectedEdges project_edges(const LoadedGraph& graph) {
  ProjectedEdges out;
  for (const LoadedGraph::Edge& e : graph.edges) out.insert({e.src, e.defined_in});
  return out;
}

OverlapMatrix overlap(const std::vector<std::pair<std::string, ProjectedEdges>>& named_sets) {
  OverlapMatrix m;
  const size_t n = named_sets.size();
  m.labels.reserve(n);
  for (const auto& [name, edges] : named_sets) {
    m.labels.push_back(name);
    m.diagonal.push_back(edges.size());
  }
  m.cells.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    const ProjectedEdges& row = named_sets[i].second;
    if (row.empty()) continue;  // guarded: empty generator keeps a zero row
    for (size_t j = 0; j < n; ++j) {
      const ProjectedEdges& col = named_sets[j].second;
      size_t common = 0;
      for (const auto& e : row) common += col.count(e);
      m.cells[i][j] = static_cast<double>(common) / static_cast<double>(row.size());
    }
  }
  return m;
}

std::string format_overlap(const OverlapMatrix& m) {
  const size_t n = m.labels.size();
  std::vector<std::vector<std::string>> cells(n + 1, std::vector<std::string>(n + 1));
  for (size_t j = 0; j < n; ++j) cells[0][j + 1] = m.labels[j];
  for (size_t i = 0; i < n; ++i) {
    cells[i + 1][0] = m.labels[i];
    for (size_t j = 0; j < n; ++j)
      cells[i + 1][j + 1] =
          i == j ? std::to_string(m.diagonal[i]) : percent(m.cells[i][j]);
  }

  std::vector<size_t> widths(n + 1, 0);
  for (const auto& row : cells)
    for (size_t j = 0; j < row.size(); ++j) widths[j] = std::max(widths[j], row[j].size());

  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) line += "  ";
      line += row[j];
      line.append(widths[j] - row[j].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

ReceiverCensus census(const Forest& forest) {
  ReceiverCensus c;
  static const std::set<std::string, std::less<>> kInvocation{"method_invocation"};
  for (size_t i = 0; i < forest.size(); ++i) {
    for (SyntaxNode node : descendants_of_kind(forest.root(i), kInvocation)) {
      ReceiverKind receiver = java::classify_receiver(node);
      ++c.counts[static_cast<size_t>(receiver.tag)];
      ++c.total;
    }
  }
  return c;
}

std::string format_census(const ReceiverCensus& c) {
  std::ostringstream out;
  out << "receiver            count  share\n";
  for (size_t i = 0; i < ReceiverCensus::kKinds; ++i) {
    std::string name(to_string(static_cast<ReceiverKind::Tag>(i)));
    out << name << std::string(20 - name.size(), ' ');
    std::string count = std::to_string(c.counts[i]);
    out << std::string(count.size() > 5 ? 0 : 5 - count.size(), ' ') << count;
    if (c.total > 0)
      out << "  " << percent(static_cast<double>(c.counts[i]) / static_cast<double>(c.total));
    out << '\n';
  }
  out << "total               ";
  std::string total = std::to_string(c.total);
  out << std::string(total.size() > 5 ? 0 : 5 - total.size(), ' ') << total << '\n';
  return out.str();
}

}  // namespace acer
