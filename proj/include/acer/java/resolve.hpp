#pragma once

// The two shipped resolvers — NR (name-based) and SCHA (simplified class
// hierarchy analysis) — plus the shared call-site seeking, receiver
// classification, and declaration-walk machinery.

#include "acer/framework.hpp"
#include "acer/java/preprocess.hpp"
#include "acer/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace acer::java {

struct ResolutionConfig {
  bool nr_use_arity = true;            // off: NR matches by name across all arities
  bool scha_expand_subtypes = true;    // off: receiver type only, no dispatch expansion
  bool scha_qualify_with_imports = false;  // on: restrict alias matches via import resolution
};

struct DeclarationSite {
  enum class Kind { local_var, param, field, not_found };
  Kind kind = Kind::not_found;
  std::string type_alias;   // shorthand text as written
  std::string owner_class;  // qualified name, for fields

  bool found() const { return kind != Kind::not_found; }
};

// Unresolved reasons surfaced by the shipped resolvers.
inline constexpr std::string_view kReasonImplicitDefaultCtor = "implicit-default-constructor";
inline constexpr std::string_view kReasonNrNoNameMatch = "nr-no-name-match";
inline constexpr std::string_view kReasonSchaComplexReceiver = "scha-complex-receiver";
inline constexpr std::string_view kReasonSchaUnknownAlias = "scha-unknown-alias";
inline constexpr std::string_view kReasonSchaNoDeclarer = "scha-no-declarer";

ReceiverKind classify_receiver(SyntaxNode invocation);

// Every method_invocation / object_creation_expression inside `body`, in
// document order. Does not descend into nested class-like bodies (those are
// separate containers); lambda bodies attribute to the enclosing container.
std::vector<CallSite> seek_call_sites_java(const ContainerKey& container, SyntaxNode body);

// Call sites in the class-level regions of one class-like node: field
// initializers (container <fields>), static initializer blocks
// (<static_init>), and instance initializer blocks (<instance_init>).
// Method bodies and nested classes are excluded.
std::vector<CallSite> seek_class_level_sites(SyntaxNode class_node, const ClassKey& owner);

// Walks upwards from `site` to find where `name` was introduced: local
// declarations preceding the site, then parameters, then fields of the
// enclosing class chain (alias-matched supertypes included).
DeclarationSite find_declaration(std::string_view name, SyntaxNode site,
                                 const JavaPreprocessor& pre);

Resolution resolve_nr(const CallSite& site, const JavaPreprocessor& pre,
                      const ResolutionConfig& config);
Resolution resolve_scha(const CallSite& site, const JavaPreprocessor& pre,
                        const ResolutionConfig& config);

class JavaGenerator : public Generator {
 public:
  JavaGenerator(const JavaPreprocessor& pre, ResolutionConfig config)
      : pre_(pre), config_(config) {}

  std::vector<CallSite> seek_call_sites(const ContainerKey& container,
                                        SyntaxNode body) const override;
  std::vector<CallSite> class_level_sites(const MethodKey& entry) const override;

  const ResolutionConfig& config() const { return config_; }
  const JavaPreprocessor& products() const { return pre_; }

 protected:
  const JavaPreprocessor& pre_;
  ResolutionConfig config_;
};

class JavaNrGenerator final : public JavaGenerator {
 public:
  using JavaGenerator::JavaGenerator;
  Resolution resolve(const Context& context, const CallSite& site) const override;
};

class JavaSchaGenerator final : public JavaGenerator {
 public:
  using JavaGenerator::JavaGenerator;
  Resolution resolve(const Context& context, const CallSite& site) const override;
};

}  // namespace acer::java
