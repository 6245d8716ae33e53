#include "acer/java/preprocess.hpp"

#include "java_common.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace acer::java {
namespace {

struct ExtractState {
  const SourceFile* file = nullptr;
  FileExtract out;
  std::string package;
  int anon_counter = 0;
  int local_depth = 0;  // > 0 inside method bodies / initializer blocks
};

std::string read_package(SyntaxNode root) {
  for (uint32_t i = 0; i < root.named_child_count(); ++i) {
    SyntaxNode child = root.named_child(i);
    if (child.kind() == "package_declaration") {
      for (uint32_t j = 0; j < child.named_child_count(); ++j) {
        SyntaxNode name = child.named_child(j);
        if (name.kind() == "identifier" || name.kind() == "scoped_identifier")
          return std::string(name.text());
      }
    }
  }
  return "";
}

void read_imports(SyntaxNode root, ImportTable& table) {
  for (uint32_t i = 0; i < root.named_child_count(); ++i) {
    SyntaxNode child = root.named_child(i);
    if (child.kind() != "import_declaration") continue;
    if (has_child_of_kind(child, "static")) continue;  // static imports are not type aliases
    SyntaxNode name;
    bool wildcard = false;
    for (uint32_t j = 0; j < child.named_child_count(); ++j) {
      SyntaxNode part = child.named_child(j);
      if (part.kind() == "identifier" || part.kind() == "scoped_identifier") name = part;
      if (part.kind() == "asterisk") wildcard = true;
    }
    if (name.is_null()) continue;
    std::string dotted(name.text());
    if (wildcard) {
      table.wildcard_packages.push_back(dotted);
    } else {
      std::string alias(simple_name(dotted));
      table.explicit_imports.emplace(alias, dotted);  // first declaration wins
    }
  }
}

ClassRecord::Kind kind_of(std::string_view node_kind) {
  if (node_kind == "interface_declaration" || node_kind == "annotation_type_declaration")
    return ClassRecord::Kind::interface_type;
  if (node_kind == "enum_declaration") return ClassRecord::Kind::enum_type;
  return ClassRecord::Kind::class_type;
}

void collect_type_list(SyntaxNode clause, std::vector<std::string>& out) {
  if (clause.is_null()) return;
  for (uint32_t i = 0; i < clause.named_child_count(); ++i) {
    SyntaxNode types = clause.named_child(i);
    if (types.kind() != "type_list") continue;
    for (uint32_t j = 0; j < types.named_child_count(); ++j)
      out.push_back(type_alias(types.named_child(j)));
  }
}

std::vector<std::string> supertypes_of(SyntaxNode decl) {
  std::vector<std::string> out;
  SyntaxNode superclass = decl.child_by_field("superclass");
  if (!superclass.is_null() && superclass.named_child_count() > 0)
    out.push_back(type_alias(superclass.named_child(0)));
  collect_type_list(decl.child_by_field("interfaces"), out);
  for (uint32_t i = 0; i < decl.named_child_count(); ++i) {
    SyntaxNode child = decl.named_child(i);
    // interface `extends` lists carry no field name
    if (child.kind() == "extends_interfaces") collect_type_list(child, out);
  }
  return out;
}

int count_params(SyntaxNode params) {
  int n = 0;
  for (uint32_t i = 0; i < params.named_child_count(); ++i) {
    std::string_view kind = params.named_child(i).kind();
    if (kind == "formal_parameter" || kind == "spread_parameter") ++n;
  }
  return n;
}

std::vector<std::string> param_aliases_of(SyntaxNode params, bool& varargs) {
  std::vector<std::string> out;
  varargs = false;
  for (uint32_t i = 0; i < params.named_child_count(); ++i) {
    SyntaxNode p = params.named_child(i);
    if (p.kind() == "formal_parameter") {
      out.push_back(type_alias(p.child_by_field("type")));
    } else if (p.kind() == "spread_parameter") {
      varargs = true;
      std::string alias;
      for (uint32_t j = 0; j < p.named_child_count(); ++j) {
        SyntaxNode child = p.named_child(j);
        if (child.kind() != "variable_declarator") {
          alias = type_alias(child);
          break;
        }
      }
      out.push_back(alias + "...");
    }
  }
  return out;
}

void harvest_method(ExtractState& st, SyntaxNode decl, const ClassKey& owner, bool anonymous) {
  RawMethod m;
  m.owner = owner;
  if (decl.kind() == "constructor_declaration") {
    m.name = kConstructorName;
  } else {
    SyntaxNode name = decl.child_by_field("name");
    if (name.is_null()) return;
    m.name = std::string(name.text());
  }
  SyntaxNode params = decl.child_by_field("parameters");
  m.arity = params.is_null() ? 0 : count_params(params);
  if (!params.is_null()) m.param_aliases = param_aliases_of(params, m.varargs);
  m.anonymous_owner = anonymous;
  m.body = decl.child_by_field("body");  // null for abstract/interface declarations
  m.path = st.file->path;
  m.byte = decl.start_byte();
  st.out.methods.push_back(std::move(m));
}

void harvest_fields(SyntaxNode member, std::map<std::string, std::string>& fields) {
  SyntaxNode type = member.child_by_field("type");
  std::string alias = type_alias(type);
  for (uint32_t i = 0; i < member.named_child_count(); ++i) {
    SyntaxNode child = member.named_child(i);
    if (child.kind() != "variable_declarator") continue;
    SyntaxNode name = child.child_by_field("name");
    if (!name.is_null()) fields.emplace(std::string(name.text()), alias);
  }
}

void walk_types(ExtractState& st, SyntaxNode node, std::vector<std::string>& path);

// Registers one class-like scope (named declaration or anonymous body),
// harvests its direct members, then recurses.
void enter_class(ExtractState& st, SyntaxNode class_node, SyntaxNode body,
                 std::vector<std::string>& path, const std::string& segment,
                 ClassRecord::Kind kind, bool anonymous) {
  path.push_back(segment);
  ClassKey key{st.package, path};

  RawClass rc;
  rc.key = key;
  rc.kind = kind;
  rc.anonymous = anonymous;
  rc.local = anonymous || st.local_depth > 0;
  rc.node = anonymous ? body : class_node;
  rc.path = st.file->path;
  rc.byte = rc.node.start_byte();
  if (!anonymous) {
    rc.supertype_aliases = supertypes_of(class_node);
    rc.is_abstract =
        modifiers_contain(class_node, "abstract") || kind == ClassRecord::Kind::interface_type;
  }

  for (SyntaxNode member : direct_members(body)) {
    std::string_view kind_name = member.kind();
    if (is_method_declaration(kind_name)) {
      SyntaxNode params = member.child_by_field("parameters");
      int arity = params.is_null() ? 0 : count_params(params);
      SyntaxNode name_node = member.child_by_field("name");
      std::string name = kind_name == "constructor_declaration" ? kConstructorName
                         : name_node.is_null()                  ? ""
                                                                : std::string(name_node.text());
      if (!name.empty()) rc.method_sigs.emplace(name, arity);
      harvest_method(st, member, key, anonymous);
    } else if (kind_name == "field_declaration" || kind_name == "constant_declaration") {
      harvest_fields(member, rc.fields);
    }
  }
  st.out.classes.push_back(std::move(rc));

  for (SyntaxNode member : direct_members(body)) {
    // named classes under these members are local declarations, not exports
    bool scoped = is_method_declaration(member.kind()) ||
                  member.kind() == "static_initializer" || member.kind() == "block";
    st.local_depth += scoped ? 1 : 0;
    walk_types(st, member, path);
    st.local_depth -= scoped ? 1 : 0;
  }
  path.pop_back();
}

void walk_types(ExtractState& st, SyntaxNode node, std::vector<std::string>& path) {
  std::string_view kind = node.kind();

  if (is_type_declaration(kind)) {
    SyntaxNode name = node.child_by_field("name");
    SyntaxNode body = node.child_by_field("body");
    if (!name.is_null())
      enter_class(st, node, body, path, std::string(name.text()), kind_of(kind), false);
    return;
  }

  if (kind == "object_creation_expression" || kind == "enum_constant") {
    SyntaxNode body;
    for (uint32_t i = 0; i < node.named_child_count(); ++i) {
      SyntaxNode child = node.named_child(i);
      if (child.kind() == "class_body") body = child;
      else walk_types(st, child, path);  // arguments may nest further creations
    }
    if (!body.is_null()) {
      std::string segment = "anon$" + std::to_string(++st.anon_counter);
      enter_class(st, node, body, path, segment, ClassRecord::Kind::class_type, true);
    }
    return;
  }

  for (uint32_t i = 0; i < node.named_child_count(); ++i)
    walk_types(st, node.named_child(i), path);
}

}  // namespace

std::string_view to_string(ClassRecord::Kind kind) {
  switch (kind) {
    case ClassRecord::Kind::class_type: return "class";
    case ClassRecord::Kind::interface_type: return "interface";
    case ClassRecord::Kind::enum_type: return "enum";
  }
  return "class";
}

FileExtract extract_file(SyntaxNode root, const SourceFile& file) {
  ExtractState st;
  st.file = &file;
  st.out.path = file.path;
  st.package = read_package(root);
  st.out.imports.own_package = st.package;
  read_imports(root, st.out.imports);

  std::vector<std::string> path;
  for (uint32_t i = 0; i < root.named_child_count(); ++i) walk_types(st, root.named_child(i), path);
  return std::move(st.out);
}

std::vector<std::string> resolve_alias(const std::string& alias, const ImportTable& imports,
                                       const PackageImportables& importables) {
  auto exported = [&importables](const std::string& qualified) {
    for (const auto& [pkg, names] : importables)
      for (const auto& [local, q] : names)
        if (q == qualified) return true;
    return false;
  };

  auto explicit_it = imports.explicit_imports.find(alias);
  if (explicit_it != imports.explicit_imports.end()) {
    // Explicit imports shadow everything, even when they point at a library
    // type the forest cannot see.
    if (exported(explicit_it->second)) return {explicit_it->second};
    return {};
  }

  auto own = importables.find(imports.own_package);
  if (own != importables.end()) {
    auto hit = own->second.find(alias);
    if (hit != own->second.end()) return {hit->second};
  }

  std::vector<std::string> out;
  for (const std::string& pkg : imports.wildcard_packages) {
    auto pkg_it = importables.find(pkg);
    if (pkg_it == importables.end()) continue;
    auto hit = pkg_it->second.find(alias);
    if (hit != pkg_it->second.end() &&
        std::find(out.begin(), out.end(), hit->second) == out.end())
      out.push_back(hit->second);
  }
  return out;
}

void JavaPreprocessor::build(const Forest& forest, unsigned threads) {
  finalize(extract(forest, threads));
}

std::vector<FileExtract> JavaPreprocessor::extract(const Forest& forest, unsigned threads) {
  std::vector<FileExtract> extracts(forest.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, forest.size() ? static_cast<unsigned>(forest.size()) : 1);

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < forest.size(); i = next.fetch_add(1))
      extracts[i] = extract_file(forest.root(i), forest.file(i));
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return extracts;
}

void JavaPreprocessor::finalize(std::vector<FileExtract> extracts) {
  std::sort(extracts.begin(), extracts.end(),
            [](const FileExtract& a, const FileExtract& b) { return a.path < b.path; });

  method_dict_.clear();
  unique_dict_.clear();
  package_importables_.clear();
  class_cache_.clear();
  import_tables_.clear();
  warnings_.clear();
  class_nodes_.clear();

  for (const FileExtract& ex : extracts) import_tables_[ex.path] = ex.imports;

  // Class records, nodes, and exports. Later files win on qualified-name
  // clashes, matching the method rule below.
  for (const FileExtract& ex : extracts) {
    for (const RawClass& rc : ex.classes) {
      std::string qualified = rc.key.qualified();
      class_nodes_[qualified] = rc.node;
      if (rc.anonymous) continue;
      ClassRecord record;
      record.key = rc.key;
      record.kind = rc.kind;
      record.supertype_aliases = rc.supertype_aliases;
      record.fields = rc.fields;
      record.method_sigs = rc.method_sigs;
      record.is_abstract = rc.is_abstract;
      class_cache_[qualified] = std::move(record);
      if (rc.local) continue;  // local classes are not importable
      std::string local_name;
      for (size_t i = 0; i < rc.key.class_path.size(); ++i) {
        if (i) local_name += '.';
        local_name += rc.key.class_path[i];
      }
      package_importables_[rc.key.package][local_name] = qualified;
    }
  }

  // Invert alias-matched supertype links into direct-subclass sets.
  std::map<std::string, std::vector<std::string>> by_alias;
  for (const auto& [qualified, record] : class_cache_)
    by_alias[record.alias()].push_back(qualified);
  for (const auto& [qualified, record] : class_cache_) {
    for (const std::string& super_alias : record.supertype_aliases) {
      auto it = by_alias.find(std::string(simple_name(super_alias)));
      if (it == by_alias.end()) continue;  // library supertype: no link
      for (const std::string& super_qualified : it->second) {
        if (super_qualified == qualified) continue;
        class_cache_[super_qualified].subclasses.insert(qualified);
      }
    }
  }

  // Methods: group same-arity declarations; attach parameter aliases only
  // when the group actually differs by them, so plain keys stay plain.
  std::vector<const RawMethod*> ordered;
  for (const FileExtract& ex : extracts)
    for (const RawMethod& m : ex.methods) ordered.push_back(&m);
  std::stable_sort(ordered.begin(), ordered.end(), [](const RawMethod* a, const RawMethod* b) {
    return std::tie(a->path, a->byte) < std::tie(b->path, b->byte);
  });

  std::map<std::tuple<ClassKey, std::string, int>, std::vector<const RawMethod*>> groups;
  for (const RawMethod* m : ordered) groups[{m->owner, m->name, m->arity}].push_back(m);

  std::map<MethodKey, FinalizedMethod> finalized;
  for (const auto& [group_key, members] : groups) {
    bool mixed = false;
    for (const RawMethod* m : members)
      if (m->param_aliases != members.front()->param_aliases) mixed = true;
    if (members.size() > 1) {
      MethodKey plain{std::get<0>(group_key), std::get<1>(group_key), std::get<2>(group_key),
                      std::nullopt};
      warnings_.push_back({"duplicate-key", members.front()->path,
                           std::to_string(members.size()) + " declarations share " +
                               canonical_id(plain)});
    }
    for (const RawMethod* m : members) {
      MethodKey key{m->owner, m->name, m->arity,
                    mixed ? std::optional(m->param_aliases) : std::nullopt};
      // true duplicates: the later declaration wins
      finalized[key] = FinalizedMethod{key, m->varargs, m->anonymous_owner, m->body};
    }
  }

  std::vector<FinalizedMethod> methods;
  methods.reserve(finalized.size());
  for (auto& [key, fm] : finalized) methods.push_back(std::move(fm));

  index_methods(methods);
  index_classes();
  validate_contract();
}

void JavaPreprocessor::index_methods(const std::vector<FinalizedMethod>& methods) {
  anonymous_methods_.clear();
  varargs_methods_.clear();
  methods_by_class_.clear();
  methods_by_name_.clear();
  methods_by_alias_name_.clear();

  for (const FinalizedMethod& m : methods) {
    if (m.body.is_null()) continue;  // abstract: dispatch info only, not a container
    method_dict_[m.key] = m.body;
    if (m.anonymous) anonymous_methods_.insert(m.key);
    if (m.varargs) varargs_methods_.insert(m.key);
    if (m.anonymous) continue;  // anonymous classes are never resolution targets

    DeclaredMethod dm{m.key, m.varargs};
    unique_dict_[NonUniqueKey::name_arity(m.key.name, m.key.arity)].insert(m.key);
    unique_dict_[NonUniqueKey::alias_name_arity(m.key.owner.alias(), m.key.name, m.key.arity)]
        .insert(m.key);
    methods_by_class_[m.key.owner.qualified()].push_back(dm);
    methods_by_name_[m.key.name].push_back(dm);
    methods_by_alias_name_[{m.key.owner.alias(), m.key.name}].push_back(dm);
  }
}

void JavaPreprocessor::index_classes() {
  alias_index_.clear();
  node_to_class_.clear();
  for (const auto& [qualified, record] : class_cache_)
    alias_index_[record.alias()].push_back(qualified);
  for (const auto& [qualified, node] : class_nodes_)
    if (!node.is_null())
      node_to_class_[{node.file().path, node.start_byte()}] = qualified;
}

const ImportTable* JavaPreprocessor::import_table_for(const std::string& path) const {
  auto it = import_tables_.find(path);
  return it == import_tables_.end() ? nullptr : &it->second;
}

std::vector<const ClassRecord*> JavaPreprocessor::records_for_alias(
    const std::string& alias) const {
  std::vector<const ClassRecord*> out;
  auto it = alias_index_.find(alias);
  if (it == alias_index_.end()) return out;
  for (const std::string& qualified : it->second) out.push_back(&class_cache_.at(qualified));
  return out;
}

const ClassRecord* JavaPreprocessor::record_for(const std::string& qualified) const {
  auto it = class_cache_.find(qualified);
  return it == class_cache_.end() ? nullptr : &it->second;
}

std::vector<std::string> JavaPreprocessor::transitive_subclasses(
    const std::string& qualified) const {
  std::vector<std::string> out;
  std::set<std::string> seen{qualified};
  std::vector<std::string> frontier{qualified};
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const std::string& q : frontier) {
      const ClassRecord* record = record_for(q);
      if (!record) continue;
      for (const std::string& sub : record->subclasses)
        if (seen.insert(sub).second) next.push_back(sub);
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::string>> JavaPreprocessor::supertype_levels(
    const std::string& qualified) const {
  std::vector<std::vector<std::string>> levels;
  std::set<std::string> seen{qualified};
  std::vector<std::string> frontier{qualified};
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const std::string& q : frontier) {
      const ClassRecord* record = record_for(q);
      if (!record) continue;
      for (const std::string& super_alias : record->supertype_aliases) {
        auto it = alias_index_.find(std::string(simple_name(super_alias)));
        if (it == alias_index_.end()) continue;
        for (const std::string& super_q : it->second)
          if (seen.insert(super_q).second) next.push_back(super_q);
      }
    }
    if (!next.empty()) levels.push_back(next);
    frontier = std::move(next);
  }
  return levels;
}

const std::string* JavaPreprocessor::class_for_node(const std::string& path,
                                                    uint32_t start_byte) const {
  auto it = node_to_class_.find({path, start_byte});
  return it == node_to_class_.end() ? nullptr : &it->second;
}

std::vector<DeclaredMethod> JavaPreprocessor::lookup_name_arity(const std::string& name,
                                                                int arity) const {
  std::vector<DeclaredMethod> out;
  auto it = methods_by_name_.find(name);
  if (it == methods_by_name_.end()) return out;
  for (const DeclaredMethod& dm : it->second)
    if (dm.key.arity == arity || (dm.varargs && arity >= dm.key.arity - 1)) out.push_back(dm);
  return out;
}

std::vector<DeclaredMethod> JavaPreprocessor::lookup_alias_name_arity(const std::string& alias,
                                                                      const std::string& name,
                                                                      int arity) const {
  std::vector<DeclaredMethod> out;
  auto it = methods_by_alias_name_.find({alias, name});
  if (it == methods_by_alias_name_.end()) return out;
  for (const DeclaredMethod& dm : it->second)
    if (dm.key.arity == arity || (dm.varargs && arity >= dm.key.arity - 1)) out.push_back(dm);
  return out;
}

std::vector<DeclaredMethod> JavaPreprocessor::lookup_name_any_arity(
    const std::string& name) const {
  auto it = methods_by_name_.find(name);
  return it == methods_by_name_.end() ? std::vector<DeclaredMethod>{} : it->second;
}

std::vector<DeclaredMethod> JavaPreprocessor::lookup_alias_name_any_arity(
    const std::string& alias, const std::string& name) const {
  auto it = methods_by_alias_name_.find({alias, name});
  return it == methods_by_alias_name_.end() ? std::vector<DeclaredMethod>{} : it->second;
}

std::vector<DeclaredMethod> JavaPreprocessor::declared_in_class(const std::string& qualified,
                                                                const std::string& name,
                                                                int arity) const {
  std::vector<DeclaredMethod> out;
  auto it = methods_by_class_.find(qualified);
  if (it == methods_by_class_.end()) return out;
  for (const DeclaredMethod& dm : it->second)
    if (dm.key.name == name &&
        (dm.key.arity == arity || (dm.varargs && arity >= dm.key.arity - 1)))
      out.push_back(dm);
  return out;
}

void JavaPreprocessor::restore(std::vector<FinalizedMethod> methods,
                               std::map<std::string, ClassRecord> class_cache,
                               std::map<std::string, SyntaxNode> class_nodes,
                               std::map<std::string, ImportTable> import_tables,
                               PackageImportables package_importables,
                               std::vector<PreprocessWarning> warnings) {
  method_dict_.clear();
  unique_dict_.clear();
  class_cache_ = std::move(class_cache);
  class_nodes_ = std::move(class_nodes);
  import_tables_ = std::move(import_tables);
  package_importables_ = std::move(package_importables);
  warnings_ = std::move(warnings);
  index_methods(methods);
  index_classes();
  validate_contract();
}

}  // namespace acer::java
