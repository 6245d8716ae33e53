#pragma once

// Shared vocabulary: method identity, call sites, containers, the call
// graph, and the canonical id scheme used by every serialization.

#include "acer/syntax.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace acer {

inline constexpr const char* kConstructorName = "<init>";

// package + enclosing-class chain, outermost first.
struct ClassKey {
  std::string package;                  // dotted, possibly empty (default package)
  std::vector<std::string> class_path;  // non-empty

  std::string qualified() const;
  const std::string& alias() const { return class_path.back(); }
  auto operator<=>(const ClassKey&) const = default;
};

struct MethodKey {
  ClassKey owner;
  std::string name;  // "<init>" for constructors
  int arity = 0;
  // Shorthand parameter type names, recorded only when several declarations
  // share (owner, name, arity) and the types are needed to tell them apart.
  std::optional<std::vector<std::string>> param_type_aliases;

  auto operator<=>(const MethodKey&) const = default;
};

enum class ClassLevelKind { fields, static_init, instance_init };
std::string_view to_string(ClassLevelKind kind);

struct ClassLevelKey {
  ClassKey owner;
  ClassLevelKind kind = ClassLevelKind::fields;
  auto operator<=>(const ClassLevelKey&) const = default;
};

// A vertex that can lexically contain call sites: a method body or a
// class-level region (field initializers, initializer blocks).
struct ContainerKey {
  std::variant<MethodKey, ClassLevelKey> value;

  bool is_method() const { return std::holds_alternative<MethodKey>(value); }
  const MethodKey* method() const { return std::get_if<MethodKey>(&value); }
  const ClassLevelKey* class_level() const { return std::get_if<ClassLevelKey>(&value); }
  const ClassKey& owner() const;
  auto operator<=>(const ContainerKey&) const = default;
};

struct ReceiverKind {
  enum class Tag { implicit, explicit_this, identifier, field_access, method_invocation, other };
  Tag tag = Tag::implicit;
  std::string detail;  // identifier name, or the node kind for `other`

  static ReceiverKind implicit() { return {Tag::implicit, ""}; }
  static ReceiverKind explicit_this() { return {Tag::explicit_this, ""}; }
  static ReceiverKind identifier(std::string name) { return {Tag::identifier, std::move(name)}; }
  static ReceiverKind field_access() { return {Tag::field_access, ""}; }
  static ReceiverKind method_invocation() { return {Tag::method_invocation, ""}; }
  static ReceiverKind other(std::string kind) { return {Tag::other, std::move(kind)}; }
  auto operator<=>(const ReceiverKind&) const = default;
};
std::string_view to_string(ReceiverKind::Tag tag);

enum class SiteKind { method_invocation, object_creation };

struct SiteId {
  std::string file;
  uint32_t byte = 0;  // end byte of the site node; unique per forest
  auto operator<=>(const SiteId&) const = default;
};

struct CallSite {
  SiteId id;
  SiteKind kind = SiteKind::method_invocation;
  std::string callee_name;  // class name for object_creation
  int arg_count = 0;
  ReceiverKind receiver;    // Other("none") for object_creation
  ContainerKey container;
  uint32_t row = 0;  // one-based position of the site
  uint32_t col = 0;
  SyntaxNode node;   // backing node; not part of the site's identity
};

// Resolution result for one call edge: the class the edge dispatches
// through plus the method body that implements it. dispatch differs from
// defined_in's owner exactly when the method is inherited.
struct TargetKey {
  ClassKey dispatch;
  MethodKey defined_in;
  auto operator<=>(const TargetKey&) const = default;
};

std::string canonical_id(const ClassKey& key);
std::string canonical_id(const MethodKey& key);
std::string canonical_id(const ContainerKey& key);
std::string canonical_id(const TargetKey& key);

struct VertexInfo {
  std::string package;
  std::vector<std::string> class_path;
  std::string name;
  int arity = 0;
  bool synthetic = false;  // true for class-level containers
  auto operator<=>(const VertexInfo&) const = default;
};

struct GraphEdge {
  std::string src_id;
  std::string target_id;      // dispatch-qualified canonical id
  std::string defined_in_id;  // canonical id of the defining method
  SiteId site;
  uint32_t row = 0;
  uint32_t col = 0;
  auto operator<=>(const GraphEdge&) const = default;
};

struct UnresolvedSite {
  SiteId site;
  uint32_t row = 0;
  uint32_t col = 0;
  std::string name;
  int arity = 0;
  std::string reason;
  auto operator<=>(const UnresolvedSite&) const = default;
};

// Directed graph of container/method vertices and resolved-call edges.
// Edge identity is (source, target, site); inserts are idempotent and
// commutative. Unresolved sites go to a report, never to phantom vertices.
class CallGraph {
 public:
  void add_edge(const ContainerKey& source, const TargetKey& target, const CallSite& at);
  void add_unresolved(const CallSite& site, std::string reason);

  const std::set<GraphEdge>& edges() const { return edges_; }
  const std::map<std::string, VertexInfo>& vertices() const { return vertices_; }
  const std::set<UnresolvedSite>& unresolved() const { return unresolved_; }
  bool empty() const { return edges_.empty() && unresolved_.empty(); }

 private:
  friend CallGraph merge_graphs(const CallGraph& a, const CallGraph& b);
  void add_vertex(std::string id, VertexInfo info);

  std::set<GraphEdge> edges_;
  std::map<std::string, VertexInfo> vertices_;
  std::set<UnresolvedSite> unresolved_;  // de-duplicated by (site, reason)
};

CallGraph merge_graphs(const CallGraph& a, const CallGraph& b);

}  // namespace acer
