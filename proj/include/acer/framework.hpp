#pragma once

// Language-agnostic engine: the Preprocessor and Generator contracts,
// entry-point selection, and the worklist generation driver.

#include "acer/model.hpp"
#include "acer/syntax.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace acer {

// Unique method keys to their bodies. Only bodied declarations appear;
// abstract and interface methods without bodies are dispatch information,
// not containers.
using MethodDict = std::map<MethodKey, SyntaxNode>;

// Non-unique lookup key: name+arity, optionally qualified by the class
// alias. Both index families are populated; resolvers pick.
struct NonUniqueKey {
  std::optional<std::string> alias;
  std::string name;
  int arity = 0;
  auto operator<=>(const NonUniqueKey&) const = default;

  static NonUniqueKey name_arity(std::string name, int arity) {
    return {std::nullopt, std::move(name), arity};
  }
  static NonUniqueKey alias_name_arity(std::string alias, std::string name, int arity) {
    return {std::move(alias), std::move(name), arity};
  }
};

using UniqueDict = std::map<NonUniqueKey, std::set<MethodKey>>;

// Per-algorithm payload. Context-insensitive algorithms use the unit
// (empty) value; data-flow algorithms would carry state here.
struct Context {
  std::string payload;
  auto operator<=>(const Context&) const = default;
};

struct Resolution {
  std::vector<std::pair<Context, TargetKey>> targets;  // canonical order, no duplicates
  std::string empty_reason;                            // set when targets is empty
};

class Generator {
 public:
  virtual ~Generator() = default;

  // All call sites lexically inside `body`, in document order, attributed
  // to `container`.
  virtual std::vector<CallSite> seek_call_sites(const ContainerKey& container,
                                                SyntaxNode body) const = 0;

  // Targets for one call site. Empty targets means unresolved; the reason
  // travels with the resolution.
  virtual Resolution resolve(const Context& context, const CallSite& site) const = 0;

  // Call sites in the class-level containers (field initializers,
  // initializer blocks) of the entry method's class. Seeded once per class.
  virtual std::vector<CallSite> class_level_sites(const MethodKey& entry) const {
    (void)entry;
    return {};
  }
};

// Contract for preprocessors: build() populates at least method_dict and
// unique_dict from a forest; products are frozen afterwards.
class Preprocessor {
 public:
  virtual ~Preprocessor() = default;
  virtual void build(const Forest& forest, unsigned threads = 0) = 0;

  const MethodDict& method_dict() const { return method_dict_; }
  const UniqueDict& unique_dict() const { return unique_dict_; }

  // Contract check: every unique_dict value set is non-empty and a subset
  // of method_dict's keys. Throws std::logic_error on violation.
  void validate_contract() const;

 protected:
  MethodDict method_dict_;
  UniqueDict unique_dict_;
};

struct EntryPointFilter {
  enum class Kind { all_methods, name_equals, regex };
  Kind kind = Kind::all_methods;
  std::string arg;

  static EntryPointFilter all() { return {Kind::all_methods, ""}; }
  static EntryPointFilter name_equals(std::string name) {
    return {Kind::name_equals, std::move(name)};
  }
  static EntryPointFilter matching(std::string pattern) {
    return {Kind::regex, std::move(pattern)};
  }
  // Accepts "all", "name=<string>", "regex=<pattern>" (regex matches the
  // canonical id). Throws std::invalid_argument otherwise.
  static EntryPointFilter parse(std::string_view spec);
  std::string spec() const;
};

// Deterministic, canonical-id-sorted subset of method_dict's keys. An empty
// result is the NoEntryPoints condition; generation over it yields an empty
// graph.
std::vector<MethodKey> select_entry_points(const MethodDict& method_dict,
                                           const EntryPointFilter& filter);

// Worklist driver. Seeds the deque with every call site inside the entry
// containers plus, once per entry class, its class-level containers. Pops
// FIFO, skips (context, site) pairs already visited, resolves, records the
// edge or the unresolved reason, and seeks new sites in each target's
// defining body. Resolver exceptions abort with a diagnostic naming the
// site.
CallGraph generate(const MethodDict& method_dict, const Generator& generator,
                   std::span<const MethodKey> entries);

}  // namespace acer
