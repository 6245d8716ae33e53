#include "acer/java/resolve.hpp"

#include "java_common.hpp"

#include <algorithm>
#include <set>

namespace acer::java {
namespace {

int count_arguments(SyntaxNode call) {
  SyntaxNode args = call.child_by_field("arguments");
  return args.is_null() ? 0 : static_cast<int>(args.named_child_count());
}

CallSite make_site(SyntaxNode node, const ContainerKey& container) {
  CallSite site;
  // End bytes are unique across call-site nodes; start bytes collide for
  // nested invocations (the outer site of a.b().c() starts at `a`).
  site.id = {node.file().path, node.end_byte()};
  Span span = node.span();
  site.row = span.start.row + 1;
  site.col = span.start.col + 1;
  site.container = container;
  site.node = node;
  site.arg_count = count_arguments(node);

  if (node.kind() == "method_invocation") {
    site.kind = SiteKind::method_invocation;
    SyntaxNode name = node.child_by_field("name");
    site.callee_name = name.is_null() ? "" : std::string(name.text());
    site.receiver = classify_receiver(node);
  } else {
    site.kind = SiteKind::object_creation;
    site.callee_name = std::string(simple_name(type_alias(node.child_by_field("type"))));
    site.receiver = ReceiverKind::other("none");
  }
  return site;
}

// Collects sites in document order. Stops at nested class-like bodies
// (separate containers); lambdas are transparent.
void collect_sites(SyntaxNode node, const ContainerKey& container, std::vector<CallSite>& out) {
  std::string_view kind = node.kind();
  if (is_type_declaration(kind)) return;

  if (kind == "method_invocation") {
    out.push_back(make_site(node, container));
    for (uint32_t i = 0; i < node.named_child_count(); ++i)
      collect_sites(node.named_child(i), container, out);
    return;
  }
  if (kind == "object_creation_expression") {
    out.push_back(make_site(node, container));
    for (uint32_t i = 0; i < node.named_child_count(); ++i) {
      SyntaxNode child = node.named_child(i);
      if (child.kind() != "class_body") collect_sites(child, container, out);
    }
    return;
  }
  if (kind == "enum_constant") {
    SyntaxNode args = node.child_by_field("arguments");
    if (!args.is_null()) collect_sites(args, container, out);
    return;  // constant bodies are separate containers
  }

  for (uint32_t i = 0; i < node.named_child_count(); ++i)
    collect_sites(node.named_child(i), container, out);
}

void sort_and_dedup(Resolution& resolution) {
  auto& t = resolution.targets;
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first, a.second) < std::tie(b.first, b.second);
  });
  t.erase(std::unique(t.begin(), t.end()), t.end());
}

struct FieldHit {
  std::string alias;
  std::string owner;
};

std::optional<FieldHit> field_in_record(const ClassRecord* record, std::string_view name) {
  if (!record) return std::nullopt;
  auto it = record->fields.find(std::string(name));
  if (it == record->fields.end()) return std::nullopt;
  return FieldHit{it->second, record->qualified()};
}

// Fields of the alias-matched supertype closure, nearest level first.
std::optional<FieldHit> field_in_supertypes(const std::string& qualified,
                                            const JavaPreprocessor& pre, std::string_view name) {
  for (const auto& level : pre.supertype_levels(qualified))
    for (const std::string& super_q : level)
      if (auto hit = field_in_record(pre.record_for(super_q), name)) return hit;
  return std::nullopt;
}

std::optional<FieldHit> field_in_anonymous_body(SyntaxNode class_body, std::string_view name,
                                                const JavaPreprocessor& pre) {
  for (SyntaxNode member : direct_members(class_body)) {
    if (member.kind() != "field_declaration" && member.kind() != "constant_declaration") continue;
    std::string alias = type_alias(member.child_by_field("type"));
    for (uint32_t i = 0; i < member.named_child_count(); ++i) {
      SyntaxNode decl = member.named_child(i);
      if (decl.kind() != "variable_declarator") continue;
      SyntaxNode field_name = decl.child_by_field("name");
      if (!field_name.is_null() && field_name.text() == name)
        return FieldHit{alias, ""};
    }
  }
  // the creation type acts as the supertype: new T() { ... }
  SyntaxNode creation = class_body.parent();
  if (creation.kind() == "object_creation_expression") {
    std::string super_alias(simple_name(type_alias(creation.child_by_field("type"))));
    for (const ClassRecord* record : pre.records_for_alias(super_alias)) {
      if (auto hit = field_in_record(record, name)) return hit;
      if (auto hit = field_in_supertypes(record->qualified(), pre, name)) return hit;
    }
  }
  return std::nullopt;
}

// Matches `name` against declarators of a local_variable_declaration.
std::optional<std::string> local_declares(SyntaxNode decl, std::string_view name) {
  std::string alias = type_alias(decl.child_by_field("type"));
  for (uint32_t i = 0; i < decl.named_child_count(); ++i) {
    SyntaxNode d = decl.named_child(i);
    if (d.kind() != "variable_declarator") continue;
    SyntaxNode n = d.child_by_field("name");
    if (!n.is_null() && n.text() == name) return alias;
  }
  return std::nullopt;
}

std::optional<std::string> param_declares(SyntaxNode params, std::string_view name) {
  if (params.is_null()) return std::nullopt;
  for (uint32_t i = 0; i < params.named_child_count(); ++i) {
    SyntaxNode p = params.named_child(i);
    if (p.kind() == "formal_parameter") {
      SyntaxNode n = p.child_by_field("name");
      if (!n.is_null() && n.text() == name) return type_alias(p.child_by_field("type"));
    } else if (p.kind() == "spread_parameter") {
      std::string alias;
      for (uint32_t j = 0; j < p.named_child_count(); ++j) {
        SyntaxNode child = p.named_child(j);
        if (child.kind() == "variable_declarator") {
          SyntaxNode n = child.child_by_field("name");
          if (!n.is_null() && n.text() == name) return alias + "[]";  // varargs bind as arrays
        } else {
          alias = type_alias(child);
        }
      }
    }
  }
  return std::nullopt;
}

ClassKey dispatch_key(const JavaPreprocessor& pre, const std::string& qualified) {
  const ClassRecord* record = pre.record_for(qualified);
  return record ? record->key : ClassKey{"", {qualified}};
}

// Per-candidate-class lookup: a declaration in the class itself, else the
// nearest supertype level that declares a body. Candidates with no declarer
// anywhere are dropped.
void resolve_against_candidates(const std::vector<std::string>& candidates,
                                const CallSite& site, const JavaPreprocessor& pre,
                                Resolution& resolution) {
  for (const std::string& candidate : candidates) {
    std::vector<DeclaredMethod> declared =
        pre.declared_in_class(candidate, site.callee_name, site.arg_count);
    if (declared.empty()) {
      for (const auto& level : pre.supertype_levels(candidate)) {
        for (const std::string& super_q : level) {
          auto up = pre.declared_in_class(super_q, site.callee_name, site.arg_count);
          declared.insert(declared.end(), up.begin(), up.end());
        }
        if (!declared.empty()) break;  // nearest declaring level wins
      }
    }
    for (const DeclaredMethod& dm : declared)
      resolution.targets.push_back({Context{}, TargetKey{dispatch_key(pre, candidate), dm.key}});
  }
}

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

ReceiverKind classify_receiver(SyntaxNode invocation) {
  SyntaxNode object = invocation.child_by_field("object");
  if (object.is_null()) return ReceiverKind::implicit();
  std::string_view kind = object.kind();
  if (kind == "this") return ReceiverKind::explicit_this();
  if (kind == "identifier") return ReceiverKind::identifier(std::string(object.text()));
  if (kind == "field_access") return ReceiverKind::field_access();
  if (kind == "method_invocation") return ReceiverKind::method_invocation();
  return ReceiverKind::other(std::string(kind));
}

std::vector<CallSite> seek_call_sites_java(const ContainerKey& container, SyntaxNode body) {
  std::vector<CallSite> out;
  if (body.is_null()) return out;
  for (uint32_t i = 0; i < body.named_child_count(); ++i)
    collect_sites(body.named_child(i), container, out);
  return out;
}

std::vector<CallSite> seek_class_level_sites(SyntaxNode class_node, const ClassKey& owner) {
  SyntaxNode body = class_node.kind() == "class_body" || class_node.kind() == "enum_body"
                        ? class_node
                        : class_node.child_by_field("body");
  std::vector<CallSite> out;
  for (SyntaxNode member : direct_members(body)) {
    std::string_view kind = member.kind();
    if (kind == "field_declaration" || kind == "constant_declaration") {
      ContainerKey container{ClassLevelKey{owner, ClassLevelKind::fields}};
      for (uint32_t i = 0; i < member.named_child_count(); ++i)
        collect_sites(member.named_child(i), container, out);
    } else if (kind == "enum_constant") {
      // constant arguments run during class initialization
      SyntaxNode args = member.child_by_field("arguments");
      if (!args.is_null()) {
        ContainerKey container{ClassLevelKey{owner, ClassLevelKind::fields}};
        collect_sites(args, container, out);
      }
    } else if (kind == "static_initializer") {
      ContainerKey container{ClassLevelKey{owner, ClassLevelKind::static_init}};
      for (uint32_t i = 0; i < member.named_child_count(); ++i)
        collect_sites(member.named_child(i), container, out);
    } else if (kind == "block") {
      ContainerKey container{ClassLevelKey{owner, ClassLevelKind::instance_init}};
      collect_sites(member, container, out);
    }
  }
  return out;
}

DeclarationSite find_declaration(std::string_view name, SyntaxNode site,
                                 const JavaPreprocessor& pre) {
  const uint32_t site_start = site.start_byte();
  const std::string& path = site.file().path;

  for (SyntaxNode cur = site.parent(); !cur.is_null(); cur = cur.parent()) {
    std::string_view kind = cur.kind();

    if (kind == "block" || kind == "constructor_body" || kind == "switch_block") {
      std::optional<std::string> latest;
      for (uint32_t i = 0; i < cur.named_child_count(); ++i) {
        SyntaxNode stmt = cur.named_child(i);
        if (stmt.start_byte() >= site_start) break;
        if (stmt.kind() == "local_variable_declaration") {
          if (auto alias = local_declares(stmt, name)) latest = alias;
        } else if (stmt.kind() == "switch_block_statement_group") {
          for (uint32_t j = 0; j < stmt.named_child_count(); ++j) {
            SyntaxNode inner = stmt.named_child(j);
            if (inner.start_byte() >= site_start) break;
            if (inner.kind() == "local_variable_declaration")
              if (auto alias = local_declares(inner, name)) latest = alias;
          }
        }
      }
      if (latest) return {DeclarationSite::Kind::local_var, *latest, ""};
    } else if (kind == "for_statement") {
      SyntaxNode init = cur.child_by_field("init");
      if (!init.is_null() && init.kind() == "local_variable_declaration" &&
          init.start_byte() < site_start) {
        if (auto alias = local_declares(init, name))
          return {DeclarationSite::Kind::local_var, *alias, ""};
      }
    } else if (kind == "enhanced_for_statement") {
      SyntaxNode n = cur.child_by_field("name");
      if (!n.is_null() && n.text() == name && n.start_byte() < site_start)
        return {DeclarationSite::Kind::local_var, type_alias(cur.child_by_field("type")), ""};
    } else if (kind == "catch_clause") {
      for (uint32_t i = 0; i < cur.named_child_count(); ++i) {
        SyntaxNode param = cur.named_child(i);
        if (param.kind() != "catch_formal_parameter") continue;
        SyntaxNode n = param.child_by_field("name");
        if (n.is_null() || n.text() != name) continue;
        // first listed exception type stands in for the union
        for (uint32_t j = 0; j < param.named_child_count(); ++j) {
          SyntaxNode child = param.named_child(j);
          if (child.kind() == "catch_type" && child.named_child_count() > 0)
            return {DeclarationSite::Kind::param, type_alias(child.named_child(0)), ""};
        }
      }
    } else if (kind == "try_with_resources_statement") {
      for (uint32_t i = 0; i < cur.named_child_count(); ++i) {
        SyntaxNode spec = cur.named_child(i);
        if (spec.kind() != "resource_specification") continue;
        for (uint32_t j = 0; j < spec.named_child_count(); ++j) {
          SyntaxNode res = spec.named_child(j);
          if (res.kind() != "resource" || res.start_byte() >= site_start) continue;
          SyntaxNode n = res.child_by_field("name");
          if (!n.is_null() && n.text() == name)
            return {DeclarationSite::Kind::local_var, type_alias(res.child_by_field("type")), ""};
        }
      }
    } else if (kind == "lambda_expression") {
      SyntaxNode params = cur.child_by_field("parameters");
      if (!params.is_null() && params.kind() == "formal_parameters") {
        if (auto alias = param_declares(params, name))
          return {DeclarationSite::Kind::param, *alias, ""};
      }
      // untyped lambda parameters shadow outer declarations but carry no type
      if (!params.is_null() && params.kind() == "identifier" && params.text() == name) return {};
      if (!params.is_null() && params.kind() == "inferred_parameters")
        for (uint32_t i = 0; i < params.named_child_count(); ++i)
          if (params.named_child(i).text() == name) return {};
    } else if (is_method_declaration(kind)) {
      if (auto alias = param_declares(cur.child_by_field("parameters"), name))
        return {DeclarationSite::Kind::param, *alias, ""};
    } else if (kind == "class_body" || kind == "enum_body" || kind == "interface_body") {
      const std::string* qualified = pre.class_for_node(path, cur.start_byte());
      if (qualified) {  // anonymous body: fields scanned syntactically
        if (auto hit = field_in_anonymous_body(cur, name, pre))
          return {DeclarationSite::Kind::field, hit->alias,
                  hit->owner.empty() ? *qualified : hit->owner};
      }
    } else if (is_type_declaration(kind)) {
      const std::string* qualified = pre.class_for_node(path, cur.start_byte());
      if (!qualified) continue;
      if (auto hit = field_in_record(pre.record_for(*qualified), name))
        return {DeclarationSite::Kind::field, hit->alias, hit->owner};
      if (auto hit = field_in_supertypes(*qualified, pre, name))
        return {DeclarationSite::Kind::field, hit->alias, hit->owner};
    }
  }
  return {};
}

Resolution resolve_nr(const CallSite& site, const JavaPreprocessor& pre,
                      const ResolutionConfig& config) {
  Resolution resolution;
  std::vector<DeclaredMethod> hits;
  if (site.kind == SiteKind::method_invocation) {
    hits = config.nr_use_arity ? pre.lookup_name_arity(site.callee_name, site.arg_count)
                               : pre.lookup_name_any_arity(site.callee_name);
    if (hits.empty()) {
      resolution.empty_reason = kReasonNrNoNameMatch;
      return resolution;
    }
  } else {
    hits = config.nr_use_arity
               ? pre.lookup_alias_name_arity(site.callee_name, kConstructorName, site.arg_count)
               : pre.lookup_alias_name_any_arity(site.callee_name, kConstructorName);
    if (hits.empty()) {
      resolution.empty_reason = pre.is_class_alias(site.callee_name)
                                    ? std::string(kReasonImplicitDefaultCtor)
                                    : std::string(kReasonNrNoNameMatch);
      return resolution;
    }
  }
  for (const DeclaredMethod& dm : hits)
    resolution.targets.push_back({Context{}, TargetKey{dm.key.owner, dm.key}});
  sort_and_dedup(resolution);
  return resolution;
}

Resolution resolve_scha(const CallSite& site, const JavaPreprocessor& pre,
                        const ResolutionConfig& config) {
  Resolution resolution;

  if (site.kind == SiteKind::object_creation) {
    auto hits = pre.lookup_alias_name_arity(site.callee_name, kConstructorName, site.arg_count);
    if (hits.empty()) {
      resolution.empty_reason = pre.is_class_alias(site.callee_name)
                                    ? std::string(kReasonImplicitDefaultCtor)
                                    : std::string(kReasonSchaUnknownAlias);
      return resolution;
    }
    for (const DeclaredMethod& dm : hits)  // constructors dispatch to their own class
      resolution.targets.push_back({Context{}, TargetKey{dm.key.owner, dm.key}});
    sort_and_dedup(resolution);
    return resolution;
  }

  std::vector<std::string> candidates;
  switch (site.receiver.tag) {
    case ReceiverKind::Tag::identifier: {
      DeclarationSite decl = find_declaration(site.receiver.detail, site.node, pre);
      if (!decl.found()) {
        // class-name receiver: resolve statically, no dispatch expansion
        std::vector<const ClassRecord*> records = pre.records_for_alias(site.receiver.detail);
        if (records.empty()) {
          resolution.empty_reason = kReasonSchaUnknownAlias;
          return resolution;
        }
        for (const ClassRecord* r : records) candidates.push_back(r->qualified());
        break;
      }
      std::string alias(simple_name(decl.type_alias));
      std::vector<const ClassRecord*> roots;
      if (config.scha_qualify_with_imports) {
        const ImportTable* table = pre.import_table_for(site.id.file);
        if (table)
          for (const std::string& q : resolve_alias(alias, *table, pre.package_importables()))
            if (const ClassRecord* r = pre.record_for(q)) roots.push_back(r);
      } else {
        roots = pre.records_for_alias(alias);
      }
      if (roots.empty()) {
        resolution.empty_reason = kReasonSchaUnknownAlias;
        return resolution;
      }
      for (const ClassRecord* r : roots) {
        candidates.push_back(r->qualified());
        if (config.scha_expand_subtypes)
          for (const std::string& sub : pre.transitive_subclasses(r->qualified()))
            candidates.push_back(sub);
      }
      break;
    }
    case ReceiverKind::Tag::implicit:
    case ReceiverKind::Tag::explicit_this: {
      ClassKey owner = site.container.owner();
      // anonymous containers dispatch through the nearest named class
      while (owner.class_path.size() > 1 && owner.class_path.back().rfind("anon$", 0) == 0)
        owner.class_path.pop_back();
      std::string qualified = owner.qualified();
      if (!pre.record_for(qualified)) {
        resolution.empty_reason = kReasonSchaUnknownAlias;
        return resolution;
      }
      candidates.push_back(qualified);
      for (const auto& level : pre.supertype_levels(qualified))
        candidates.insert(candidates.end(), level.begin(), level.end());
      if (config.scha_expand_subtypes)
        for (const std::string& sub : pre.transitive_subclasses(qualified))
          candidates.push_back(sub);
      break;
    }
    default:
      resolution.empty_reason = kReasonSchaComplexReceiver;
      return resolution;
  }

  resolve_against_candidates(sorted_unique(std::move(candidates)), site, pre, resolution);
  if (resolution.targets.empty()) {
    resolution.empty_reason = kReasonSchaNoDeclarer;
    return resolution;
  }
  sort_and_dedup(resolution);
  return resolution;
}

std::vector<CallSite> JavaGenerator::seek_call_sites(const ContainerKey& container,
                                                     SyntaxNode body) const {
  return seek_call_sites_java(container, body);
}

std::vector<CallSite> JavaGenerator::class_level_sites(const MethodKey& entry) const {
  auto it = pre_.class_nodes().find(entry.owner.qualified());
  if (it == pre_.class_nodes().end() || it->second.is_null()) return {};
  return seek_class_level_sites(it->second, entry.owner);
}

Resolution JavaNrGenerator::resolve(const Context& context, const CallSite& site) const {
  Resolution resolution = resolve_nr(site, pre_, config_);
  for (auto& [ctx, target] : resolution.targets) ctx = context;
  return resolution;
}

Resolution JavaSchaGenerator::resolve(const Context& context, const CallSite& site) const {
  Resolution resolution = resolve_scha(site, pre_, config_);
  for (auto& [ctx, target] : resolution.targets) ctx = context;
  return resolution;
}

}  // namespace acer::java
