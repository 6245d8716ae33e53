#pragma once

// Parse frontend: grammar loading, source-tree parsing into a forest of
// syntax trees, and uniform node inspection over tree-sitter nodes.

#include <tree_sitter/api.h>

#include <cstdint>
#include <filesystem>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace acer {

struct Point {
  uint32_t row = 0;  // zero-based
  uint32_t col = 0;
  auto operator<=>(const Point&) const = default;
};

struct Span {
  uint32_t start_byte = 0;
  uint32_t end_byte = 0;
  Point start;
  Point end;
  auto operator<=>(const Span&) const = default;
};

struct SourceFile {
  std::string path;      // root-relative, '/'-separated; unique within a forest
  std::string content;   // exact bytes parsed; spans index into it
  std::string language;
};

// Lightweight view of one tree node. Valid only while the owning Forest
// is alive.
class SyntaxNode {
 public:
  SyntaxNode() : node_{}, file_(nullptr) {}
  SyntaxNode(TSNode node, const SourceFile* file) : node_(node), file_(file) {}

  bool is_null() const { return file_ == nullptr || ts_node_is_null(node_); }
  std::string_view kind() const { return ts_node_type(node_); }
  bool is_named() const { return ts_node_is_named(node_); }
  bool is_error() const { return ts_node_is_error(node_); }
  bool is_missing() const { return ts_node_is_missing(node_); }
  bool has_error() const { return ts_node_has_error(node_); }

  uint32_t start_byte() const { return ts_node_start_byte(node_); }
  uint32_t end_byte() const { return ts_node_end_byte(node_); }
  Span span() const;
  std::string_view text() const;

  SyntaxNode parent() const { return {ts_node_parent(node_), file_}; }
  uint32_t child_count() const { return ts_node_child_count(node_); }
  SyntaxNode child(uint32_t i) const { return {ts_node_child(node_, i), file_}; }
  uint32_t named_child_count() const { return ts_node_named_child_count(node_); }
  SyntaxNode named_child(uint32_t i) const { return {ts_node_named_child(node_, i), file_}; }
  SyntaxNode child_by_field(std::string_view name) const {
    return {ts_node_child_by_field_name(node_, name.data(), static_cast<uint32_t>(name.size())), file_};
  }

  const SourceFile& file() const { return *file_; }
  const SourceFile* file_ptr() const { return file_; }
  TSNode raw() const { return node_; }
  bool same_node(const SyntaxNode& other) const { return ts_node_eq(node_, other.node_); }

 private:
  TSNode node_;
  const SourceFile* file_;
};

struct ParseIssue {
  enum class Kind { io_failure, syntax_error };
  std::string path;
  uint32_t row = 0;  // zero-based; printed one-based
  uint32_t col = 0;
  Kind kind = Kind::syntax_error;
};

struct ParseReport {
  std::vector<ParseIssue> issues;
  std::string grammar_version;
  bool empty_forest = false;
  // `PARSE-ERROR <path> <row>:<col>` per issue, one-based coordinates.
  std::string format_lines() const;
};

class UnsupportedLanguageError : public std::runtime_error {
 public:
  explicit UnsupportedLanguageError(const std::string& tag)
      : std::runtime_error("unsupported language: " + tag) {}
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Immutable bundle of parsed files and their trees. Move-only; nodes handed
// out by roots()/descendants stay valid for the lifetime of the forest.
class Forest {
 public:
  Forest() = default;
  Forest(Forest&&) = default;
  Forest& operator=(Forest&&) = default;
  Forest(const Forest&) = delete;
  Forest& operator=(const Forest&) = delete;

  size_t size() const { return files_.size(); }
  const SourceFile& file(size_t i) const { return *files_[i]; }
  SyntaxNode root(size_t i) const;
  std::vector<SyntaxNode> roots() const;
  const ParseReport& report() const { return report_; }

 private:
  friend struct ForestBuilder;

  struct TreeDeleter {
    void operator()(TSTree* t) const { ts_tree_delete(t); }
  };
  std::vector<std::unique_ptr<SourceFile>> files_;  // path-sorted
  std::vector<std::unique_ptr<TSTree, TreeDeleter>> trees_;
  ParseReport report_;
};

// Returns a reusable parser factory for the language tag. Loading twice
// yields the same handle. Throws UnsupportedLanguageError for tags that are
// not compiled in.
const TSLanguage* load_grammar(std::string_view language);
std::string grammar_version(std::string_view language);
std::vector<std::string> supported_languages();

// Parses every file under root_dir matching include_globs (default:
// "*.java"-style per-language pattern). Unreadable files are skipped and
// recorded; files with syntax errors are kept and flagged. Files are ordered
// path-lexicographically. threads == 0 means hardware concurrency.
Forest parse_sources(const std::filesystem::path& root_dir, std::string_view language,
                     const std::vector<std::string>& include_globs = {},
                     unsigned threads = 0);

// Same, from in-memory (path, content) pairs.
Forest parse_buffers(std::vector<std::pair<std::string, std::string>> path_content,
                     std::string_view language, unsigned threads = 0);

// All descendants of `node` (including itself) whose kind is in `kinds`,
// in document order.
std::vector<SyntaxNode> descendants_of_kind(SyntaxNode node,
                                            const std::set<std::string, std::less<>>& kinds);

}  // namespace acer
