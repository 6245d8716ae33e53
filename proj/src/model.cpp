#include "acer/model.hpp"

#include <sstream>

namespace acer {
namespace {

void append_joined(std::string& out, const std::vector<std::string>& parts, char sep) {
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
}

VertexInfo method_vertex(const ClassKey& cls, const MethodKey& method) {
  return {cls.package, cls.class_path, method.name, method.arity, false};
}

}  // namespace

std::string_view to_string(ClassLevelKind kind) {
  switch (kind) {
    case ClassLevelKind::fields: return "<fields>";
    case ClassLevelKind::static_init: return "<static_init>";
    case ClassLevelKind::instance_init: return "<instance_init>";
  }
  return "<fields>";
}

std::string_view to_string(ReceiverKind::Tag tag) {
  switch (tag) {
    case ReceiverKind::Tag::implicit: return "implicit";
    case ReceiverKind::Tag::explicit_this: return "explicit_this";
    case ReceiverKind::Tag::identifier: return "identifier";
    case ReceiverKind::Tag::field_access: return "field_access";
    case ReceiverKind::Tag::method_invocation: return "method_invocation";
    case ReceiverKind::Tag::other: return "other";
  }
  return "other";
}

std::string ClassKey::qualified() const {
  std::string out;
  if (!package.empty()) {
    out += package;
    out += '.';
  }
  append_joined(out, class_path, '.');
  return out;
}

const ClassKey& ContainerKey::owner() const {
  if (const MethodKey* m = method()) return m->owner;
  return class_level()->owner;
}

std::string canonical_id(const ClassKey& key) { return key.qualified(); }

std::string canonical_id(const MethodKey& key) {
  std::string out = key.owner.qualified();
  out += '#';
  out += key.name;
  out += '/';
  out += std::to_string(key.arity);
  if (key.param_type_aliases) {
    out += '(';
    append_joined(out, *key.param_type_aliases, ',');
    out += ')';
  }
  return out;
}

std::string canonical_id(const ContainerKey& key) {
  if (const MethodKey* m = key.method()) return canonical_id(*m);
  const ClassLevelKey& cl = *key.class_level();
  std::string out = cl.owner.qualified();
  out += '#';
  out += to_string(cl.kind);
  return out;
}

std::string canonical_id(const TargetKey& key) {
  std::string out = key.dispatch.qualified();
  out += '#';
  out += key.defined_in.name;
  out += '/';
  out += std::to_string(key.defined_in.arity);
  if (key.defined_in.param_type_aliases) {
    out += '(';
    append_joined(out, *key.defined_in.param_type_aliases, ',');
    out += ')';
  }
  if (key.dispatch != key.defined_in.owner) {
    out += '@';
    out += key.defined_in.owner.qualified();
  }
  return out;
}

void CallGraph::add_vertex(std::string id, VertexInfo info) {
  vertices_.emplace(std::move(id), std::move(info));
}

void CallGraph::add_edge(const ContainerKey& source, const TargetKey& target,
                         const CallSite& at) {
  GraphEdge edge;
  edge.src_id = canonical_id(source);
  edge.target_id = canonical_id(target);
  edge.defined_in_id = canonical_id(target.defined_in);
  edge.site = at.id;
  edge.row = at.row;
  edge.col = at.col;

  if (const MethodKey* m = source.method()) {
    add_vertex(edge.src_id, method_vertex(m->owner, *m));
  } else {
    const ClassLevelKey& cl = *source.class_level();
    add_vertex(edge.src_id, {cl.owner.package, cl.owner.class_path,
                             std::string(to_string(cl.kind)), 0, true});
  }
  add_vertex(edge.target_id, method_vertex(target.dispatch, target.defined_in));
  edges_.insert(std::move(edge));
}

void CallGraph::add_unresolved(const CallSite& site, std::string reason) {
  unresolved_.insert(
      {site.id, site.row, site.col, site.callee_name, site.arg_count, std::move(reason)});
}

CallGraph merge_graphs(const CallGraph& a, const CallGraph& b) {
  CallGraph out = {};
  for (const CallGraph* g : {&a, &b}) {
    for (const auto& [id, info] : g->vertices()) out.vertices_.emplace(id, info);
    for (const GraphEdge& e : g->edges()) out.edges_.insert(e);
    for (const UnresolvedSite& u : g->unresolved()) out.unresolved_.insert(u);
  }
  return out;
}

}  // namespace acer
