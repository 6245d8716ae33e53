#include "support/nr_oracle.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace acer::test {
namespace {

bool class_like(std::string_view kind) {
  return kind == "class_declaration" || kind == "interface_declaration" ||
         kind == "enum_declaration" || kind == "record_declaration" ||
         kind == "annotation_type_declaration";
}

bool anonymous_body(SyntaxNode node) {
  if (node.kind() != "class_body") return false;
  std::string_view parent = node.parent().kind();
  return parent == "object_creation_expression" || parent == "enum_constant";
}

std::string strip_generics(SyntaxNode type) {
  if (type.is_null()) return "";
  if (type.kind() == "generic_type") {
    for (uint32_t i = 0; i < type.named_child_count(); ++i)
      if (type.named_child(i).kind() != "type_arguments")
        return strip_generics(type.named_child(i));
  }
  if (type.kind() == "array_type")
    return strip_generics(type.child_by_field("element")) + "[]";
  return std::string(type.text());
}

std::string last_segment(const std::string& dotted) {
  size_t pos = dotted.rfind('.');
  return pos == std::string::npos ? dotted : dotted.substr(pos + 1);
}

struct Decl {
  std::string qualified_owner;
  std::string owner_alias;
  std::string name;
  int arity = 0;
  bool varargs = false;
  bool is_ctor = false;
  bool has_body = false;
  bool in_anonymous = false;
  bool shadowed = false;  // identical later declaration wins
  std::vector<std::string> params;
  std::string file;
  uint32_t byte = 0;
  std::string id;  // filled after collision grouping
};

struct FileContext {
  std::string package;
  std::map<uint32_t, int> anon_index;  // class_body start byte -> 1-based index
};

FileContext file_context(SyntaxNode root) {
  FileContext ctx;
  for (SyntaxNode pkg : descendants_of_kind(root, {"package_declaration"})) {
    for (uint32_t i = 0; i < pkg.named_child_count(); ++i) {
      SyntaxNode n = pkg.named_child(i);
      if (n.kind() == "identifier" || n.kind() == "scoped_identifier")
        ctx.package = std::string(n.text());
    }
    break;
  }
  int counter = 0;
  for (SyntaxNode body : descendants_of_kind(root, {"class_body"}))
    if (anonymous_body(body)) ctx.anon_index[body.start_byte()] = ++counter;
  return ctx;
}

// Enclosing class names outermost-first, anonymous bodies as anon$N.
std::vector<std::string> owner_chain(SyntaxNode node, const FileContext& ctx) {
  std::vector<std::string> chain;
  for (SyntaxNode cur = node.parent(); !cur.is_null(); cur = cur.parent()) {
    if (class_like(cur.kind())) {
      SyntaxNode name = cur.child_by_field("name");
      if (!name.is_null()) chain.push_back(std::string(name.text()));
    } else if (anonymous_body(cur)) {
      chain.push_back("anon$" + std::to_string(ctx.anon_index.at(cur.start_byte())));
    }
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::string qualify(const std::string& package, const std::vector<std::string>& chain) {
  std::string out = package;
  for (const std::string& part : chain) {
    if (!out.empty()) out += '.';
    out += part;
  }
  return out;
}

std::vector<std::string> param_list(SyntaxNode params, int& arity, bool& varargs) {
  std::vector<std::string> out;
  arity = 0;
  varargs = false;
  if (params.is_null()) return out;
  for (uint32_t i = 0; i < params.named_child_count(); ++i) {
    SyntaxNode p = params.named_child(i);
    if (p.kind() == "formal_parameter") {
      out.push_back(strip_generics(p.child_by_field("type")));
      ++arity;
    } else if (p.kind() == "spread_parameter") {
      std::string alias;
      for (uint32_t j = 0; j < p.named_child_count(); ++j)
        if (p.named_child(j).kind() != "variable_declarator")
          alias = strip_generics(p.named_child(j));
      out.push_back(alias + "...");
      ++arity;
      varargs = true;
    }
  }
  return out;
}

std::vector<Decl> collect_declarations(const Forest& forest) {
  std::vector<Decl> decls;
  for (size_t f = 0; f < forest.size(); ++f) {
    SyntaxNode root = forest.root(f);
    FileContext ctx = file_context(root);
    for (SyntaxNode node :
         descendants_of_kind(root, {"method_declaration", "constructor_declaration"})) {
      Decl d;
      std::vector<std::string> chain = owner_chain(node, ctx);
      if (chain.empty()) continue;
      d.qualified_owner = qualify(ctx.package, chain);
      d.owner_alias = chain.back();
      d.is_ctor = node.kind() == "constructor_declaration";
      if (d.is_ctor) {
        d.name = "<init>";
      } else {
        SyntaxNode name = node.child_by_field("name");
        if (name.is_null()) continue;
        d.name = std::string(name.text());
      }
      d.params = param_list(node.child_by_field("parameters"), d.arity, d.varargs);
      d.has_body = !node.child_by_field("body").is_null();
      for (const std::string& part : chain)
        if (part.rfind("anon$", 0) == 0) d.in_anonymous = true;
      d.file = node.file().path;
      d.byte = node.start_byte();
      decls.push_back(std::move(d));
    }
  }

  // Collision grouping: ids carry the parameter list only when same-keyed
  // declarations differ by it; among exact duplicates the last declaration
  // in path order wins and the rest are shadowed.
  std::map<std::string, std::vector<Decl*>> groups;
  for (Decl& d : decls)
    groups[d.qualified_owner + "#" + d.name + "/" + std::to_string(d.arity)].push_back(&d);
  for (auto& [base, members] : groups) {
    std::sort(members.begin(), members.end(), [](const Decl* a, const Decl* b) {
      return std::tie(a->file, a->byte) < std::tie(b->file, b->byte);
    });
    bool mixed = false;
    for (Decl* d : members)
      if (d->params != members.front()->params) mixed = true;
    for (Decl* d : members) {
      d->id = base;
      if (mixed) {
        d->id += '(';
        for (size_t i = 0; i < d->params.size(); ++i) {
          if (i) d->id += ',';
          d->id += d->params[i];
        }
        d->id += ')';
      }
    }
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j)
        if (members[i]->params == members[j]->params) members[i]->shadowed = true;
  }
  return decls;
}

// When several classes share a qualified name, only the one latest in
// (path, byte) order owns the seeded class-level regions, mirroring the
// later-wins rule for duplicate keys.
using ClassWinners = std::map<std::string, std::pair<std::string, uint32_t>>;

// Container id for a call site, or nullopt when the site is unreachable
// even with all methods as entries: class-level regions of classes with no
// bodied methods, shadowed duplicate bodies, and superseded class nodes.
std::optional<std::string> container_id(
    SyntaxNode site, const FileContext& ctx,
    const std::map<std::string, bool>& class_has_bodies,
    const std::map<std::pair<std::string, uint32_t>, const Decl*>& decl_at,
    const ClassWinners& winners) {
  for (SyntaxNode cur = site.parent(); !cur.is_null(); cur = cur.parent()) {
    std::string_view kind = cur.kind();
    if (kind == "method_declaration" || kind == "constructor_declaration") {
      auto it = decl_at.find({cur.file().path, cur.start_byte()});
      if (it == decl_at.end() || it->second->shadowed) return std::nullopt;
      return it->second->id;
    }
    bool fields = kind == "field_declaration" || kind == "constant_declaration" ||
                  kind == "enum_constant";
    bool static_init = kind == "static_initializer";
    bool instance_init = kind == "block" && cur.parent().kind() == "class_body";
    if (fields || static_init || instance_init) {
      SyntaxNode class_node = cur.parent();
      while (!class_node.is_null() && !class_like(class_node.kind()) &&
             !anonymous_body(class_node))
        class_node = class_node.parent();
      std::vector<std::string> chain = owner_chain(cur, ctx);
      if (chain.empty() || class_node.is_null()) return std::nullopt;
      std::string qualified = qualify(ctx.package, chain);
      auto has = class_has_bodies.find(qualified);
      if (has == class_has_bodies.end() || !has->second) return std::nullopt;
      auto winner = winners.find(qualified);
      if (winner != winners.end() &&
          winner->second != std::pair(class_node.file().path, class_node.start_byte()))
        return std::nullopt;
      std::string region = fields ? "<fields>" : static_init ? "<static_init>" : "<instance_init>";
      return qualified + "#" + region;
    }
  }
  return std::nullopt;
}

}  // namespace

std::set<OracleEdge> nr_oracle_edges(const Forest& forest) {
  std::vector<Decl> decls = collect_declarations(forest);

  std::map<std::string, bool> class_has_bodies;
  std::map<std::pair<std::string, uint32_t>, const Decl*> decl_at;
  for (const Decl& d : decls) {
    if (d.has_body && !d.shadowed) class_has_bodies[d.qualified_owner] = true;
    decl_at[{d.file, d.byte}] = &d;
  }

  ClassWinners winners;
  for (size_t f = 0; f < forest.size(); ++f) {
    SyntaxNode root = forest.root(f);
    FileContext ctx = file_context(root);
    for (SyntaxNode node :
         descendants_of_kind(root, {"class_declaration", "interface_declaration",
                                    "enum_declaration", "record_declaration",
                                    "annotation_type_declaration", "class_body"})) {
      if (node.kind() == "class_body" && !anonymous_body(node)) continue;
      std::vector<std::string> chain = owner_chain(node, ctx);
      if (class_like(node.kind())) {
        SyntaxNode name = node.child_by_field("name");
        if (name.is_null()) continue;
        chain.push_back(std::string(name.text()));
      } else {
        chain.push_back("anon$" + std::to_string(ctx.anon_index.at(node.start_byte())));
      }
      winners[qualify(ctx.package, chain)] = {node.file().path, node.start_byte()};
    }
  }

  std::set<OracleEdge> edges;
  for (size_t f = 0; f < forest.size(); ++f) {
    SyntaxNode root = forest.root(f);
    FileContext ctx = file_context(root);
    for (SyntaxNode site :
         descendants_of_kind(root, {"method_invocation", "object_creation_expression"})) {
      std::optional<std::string> src =
          container_id(site, ctx, class_has_bodies, decl_at, winners);
      if (!src) continue;

      bool creation = site.kind() == "object_creation_expression";
      std::string callee;
      if (creation) {
        callee = last_segment(strip_generics(site.child_by_field("type")));
      } else {
        SyntaxNode name = site.child_by_field("name");
        if (name.is_null()) continue;
        callee = std::string(name.text());
      }
      SyntaxNode args = site.child_by_field("arguments");
      int argc = args.is_null() ? 0 : static_cast<int>(args.named_child_count());

      for (const Decl& d : decls) {
        if (!d.has_body || d.in_anonymous || d.shadowed) continue;
        bool arity_ok = d.arity == argc || (d.varargs && argc >= d.arity - 1);
        if (!arity_ok) continue;
        if (creation) {
          if (!d.is_ctor || d.owner_alias != callee) continue;
        } else {
          if (d.is_ctor || d.name != callee) continue;
        }
        edges.insert({*src, d.id, site.file().path, site.end_byte()});
      }
    }
  }
  return edges;
}

}  // namespace acer::test
