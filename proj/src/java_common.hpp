#pragma once

// Internal helpers shared by the Java preprocessor and resolvers: node-kind
// predicates and shorthand type-alias extraction.

#include "acer/syntax.hpp"

#include <string>
#include <string_view>

namespace acer::java {

inline bool is_type_declaration(std::string_view kind) {
  return kind == "class_declaration" || kind == "interface_declaration" ||
         kind == "enum_declaration" || kind == "record_declaration" ||
         kind == "annotation_type_declaration";
}

inline bool is_method_declaration(std::string_view kind) {
  return kind == "method_declaration" || kind == "constructor_declaration";
}

// Anonymous class bodies: `new T() { ... }` and enum constants with bodies.
inline bool is_anonymous_body(SyntaxNode node) {
  if (node.kind() != "class_body") return false;
  std::string_view parent = node.parent().kind();
  return parent == "object_creation_expression" || parent == "enum_constant";
}

inline std::string_view simple_name(std::string_view dotted) {
  size_t pos = dotted.rfind('.');
  return pos == std::string_view::npos ? dotted : dotted.substr(pos + 1);
}

// Shorthand type name as written, generic arguments stripped:
// `List<?>` -> "List", `a.b.C` -> "a.b.C", `Bar[]` -> "Bar[]".
inline std::string type_alias(SyntaxNode type) {
  if (type.is_null()) return "";
  std::string_view kind = type.kind();
  if (kind == "generic_type") {
    for (uint32_t i = 0; i < type.named_child_count(); ++i) {
      SyntaxNode child = type.named_child(i);
      if (child.kind() != "type_arguments") return type_alias(child);
    }
    return std::string(type.text());
  }
  if (kind == "array_type") return type_alias(type.child_by_field("element")) + "[]";
  return std::string(type.text());
}

// Rightmost identifier of a (possibly scoped) name node.
inline std::string rightmost_identifier(SyntaxNode name) {
  while (!name.is_null() && name.kind() == "scoped_identifier")
    name = name.child_by_field("name");
  return name.is_null() ? "" : std::string(name.text());
}

inline bool has_child_of_kind(SyntaxNode node, std::string_view kind) {
  for (uint32_t i = 0; i < node.child_count(); ++i)
    if (node.child(i).kind() == kind) return true;
  return false;
}

// Direct members of a class-like body node; enum members are flattened out
// of enum_body_declarations, enum constants included.
inline std::vector<SyntaxNode> direct_members(SyntaxNode body) {
  std::vector<SyntaxNode> out;
  if (body.is_null()) return out;
  for (uint32_t i = 0; i < body.named_child_count(); ++i) {
    SyntaxNode child = body.named_child(i);
    if (child.kind() == "enum_body_declarations") {
      for (uint32_t j = 0; j < child.named_child_count(); ++j)
        out.push_back(child.named_child(j));
    } else {
      out.push_back(child);
    }
  }
  return out;
}

inline bool modifiers_contain(SyntaxNode declaration, std::string_view keyword) {
  for (uint32_t i = 0; i < declaration.named_child_count(); ++i) {
    SyntaxNode child = declaration.named_child(i);
    if (child.kind() == "modifiers") return has_child_of_kind(child, keyword);
  }
  return false;
}

}  // namespace acer::java
