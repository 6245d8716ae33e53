#pragma once

// Java preprocessor: builds the lookup structures generation runs on —
// method_dict, unique_dict, package_importables, class_cache — plus the
// derived indexes the shipped resolvers use.

#include "acer/framework.hpp"
#include "acer/model.hpp"
#include "acer/syntax.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace acer::java {

struct ClassRecord {
  enum class Kind { class_type, interface_type, enum_type };

  ClassKey key;
  Kind kind = Kind::class_type;
  std::vector<std::string> supertype_aliases;  // extends/implements shorthand, as written
  std::map<std::string, std::string> fields;   // field name -> declared type alias
  std::set<std::pair<std::string, int>> method_sigs;
  std::set<std::string> subclasses;  // direct subclasses, qualified names
  bool is_abstract = false;

  const std::string& alias() const { return key.alias(); }
  std::string qualified() const { return key.qualified(); }
};
std::string_view to_string(ClassRecord::Kind kind);

// package name -> (exported local name -> qualified name). Nested types are
// exported under their dotted local path ("O.I").
using PackageImportables = std::map<std::string, std::map<std::string, std::string>>;

struct ImportTable {
  std::string own_package;
  std::map<std::string, std::string> explicit_imports;  // alias -> qualified
  std::vector<std::string> wildcard_packages;           // declaration order
};

struct DeclaredMethod {
  MethodKey key;
  bool varargs = false;
};

struct PreprocessWarning {
  std::string code;  // e.g. "duplicate-key"
  std::string path;
  std::string message;
};

// Raw per-file harvest. Pure function of one file; merging extracts of all
// files and finalizing is equivalent to a whole-forest build.
struct RawMethod {
  ClassKey owner;
  std::string name;
  int arity = 0;
  std::vector<std::string> param_aliases;
  bool varargs = false;
  bool anonymous_owner = false;  // declared inside an anonymous class body
  SyntaxNode body;               // null for abstract/bodiless declarations
  std::string path;
  uint32_t byte = 0;
};

struct RawClass {
  ClassKey key;
  ClassRecord::Kind kind = ClassRecord::Kind::class_type;
  std::vector<std::string> supertype_aliases;
  std::map<std::string, std::string> fields;
  std::set<std::pair<std::string, int>> method_sigs;
  bool is_abstract = false;
  bool anonymous = false;
  bool local = false;  // declared inside a method body or initializer block
  SyntaxNode node;     // class-like declaration, or the class_body for anonymous classes
  std::string path;
  uint32_t byte = 0;
};

struct FileExtract {
  std::string path;
  ImportTable imports;
  std::vector<RawMethod> methods;
  std::vector<RawClass> classes;
};

FileExtract extract_file(SyntaxNode root, const SourceFile& file);

// Candidates for a type alias, ordered: explicit import match (shadows
// everything, per Java), else same-package match, else wildcard-package
// matches in declaration order. Empty when the alias is library-defined.
std::vector<std::string> resolve_alias(const std::string& alias, const ImportTable& imports,
                                       const PackageImportables& importables);

class JavaPreprocessor final : public Preprocessor {
 public:
  void build(const Forest& forest, unsigned threads = 0) override;

  // Staged pipeline behind build(); exposed so the per-file-merge
  // equivalence property can be exercised directly.
  static std::vector<FileExtract> extract(const Forest& forest, unsigned threads = 0);
  void finalize(std::vector<FileExtract> extracts);

  const PackageImportables& package_importables() const { return package_importables_; }
  const std::map<std::string, ClassRecord>& class_cache() const { return class_cache_; }
  const std::map<std::string, ImportTable>& import_tables() const { return import_tables_; }
  const std::vector<PreprocessWarning>& warnings() const { return warnings_; }
  const ImportTable* import_table_for(const std::string& path) const;

  // Derived indexes.
  const std::map<std::string, SyntaxNode>& class_nodes() const { return class_nodes_; }
  const std::set<MethodKey>& anonymous_methods() const { return anonymous_methods_; }
  const std::set<MethodKey>& varargs_methods() const { return varargs_methods_; }
  bool is_class_alias(const std::string& alias) const { return alias_index_.count(alias) > 0; }
  std::vector<const ClassRecord*> records_for_alias(const std::string& alias) const;
  const ClassRecord* record_for(const std::string& qualified) const;
  // Transitive subclasses via alias-matched extends/implements links,
  // canonical order, cycle-safe.
  std::vector<std::string> transitive_subclasses(const std::string& qualified) const;
  // Supertype chain of `qualified` as BFS levels, nearest level first;
  // alias-matched records only, cycle-safe.
  std::vector<std::vector<std::string>> supertype_levels(const std::string& qualified) const;
  // Qualified class name owning a class-like node, keyed by (file path,
  // node start byte). Covers anonymous classes (keyed by their body node).
  const std::string* class_for_node(const std::string& path, uint32_t start_byte) const;

  // Lookup used by name-based resolution: exact (name, arity) matches plus
  // varargs-flagged declarations accepting `arity` arguments.
  std::vector<DeclaredMethod> lookup_name_arity(const std::string& name, int arity) const;
  std::vector<DeclaredMethod> lookup_alias_name_arity(const std::string& alias,
                                                      const std::string& name, int arity) const;
  std::vector<DeclaredMethod> lookup_name_any_arity(const std::string& name) const;
  std::vector<DeclaredMethod> lookup_alias_name_any_arity(const std::string& alias,
                                                          const std::string& name) const;
  // Bodied declarations of (name, arity) directly in one class, varargs
  // included.
  std::vector<DeclaredMethod> declared_in_class(const std::string& qualified,
                                                const std::string& name, int arity) const;

  // One finalized method_dict entry, as serialized to / restored from a
  // cache.
  struct FinalizedMethod {
    MethodKey key;
    bool varargs = false;
    bool anonymous = false;
    SyntaxNode body;
  };

  // Restores products previously serialized to a cache. The nodes must
  // belong to a forest re-parsed from the same file contents.
  void restore(std::vector<FinalizedMethod> methods,
               std::map<std::string, ClassRecord> class_cache,
               std::map<std::string, SyntaxNode> class_nodes,
               std::map<std::string, ImportTable> import_tables,
               PackageImportables package_importables,
               std::vector<PreprocessWarning> warnings);

 private:
  void index_methods(const std::vector<FinalizedMethod>& methods);
  void index_classes();

  PackageImportables package_importables_;
  std::map<std::string, ClassRecord> class_cache_;  // qualified -> record
  std::map<std::string, ImportTable> import_tables_;
  std::vector<PreprocessWarning> warnings_;

  std::map<std::string, SyntaxNode> class_nodes_;  // qualified -> node (incl. anonymous)
  std::set<MethodKey> anonymous_methods_;
  std::set<MethodKey> varargs_methods_;
  std::map<std::string, std::vector<std::string>> alias_index_;  // alias -> qualified names
  std::map<std::string, std::vector<DeclaredMethod>> methods_by_class_;
  std::map<std::string, std::vector<DeclaredMethod>> methods_by_name_;
  std::map<std::pair<std::string, std::string>, std::vector<DeclaredMethod>> methods_by_alias_name_;
  std::map<std::pair<std::string, uint32_t>, std::string> node_to_class_;
};

}  // namespace acer::java
