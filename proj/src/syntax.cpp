#include "acer/syntax.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

extern "C" const TSLanguage* tree_sitter_java(void);

namespace acer {
namespace {

constexpr const char* kJavaGrammarVersion = "tree-sitter-java 0.21.0 / tree-sitter 0.22.6";

// Translates a glob into an anchored regex: `**` crosses path separators,
// `*` and `?` do not. Patterns without '/' match the basename only.
std::regex glob_to_regex(const std::string& glob) {
  std::string re;
  for (size_t i = 0; i < glob.size(); ++i) {
    char c = glob[i];
    switch (c) {
      case '*':
        if (i + 1 < glob.size() && glob[i + 1] == '*') {
          re += ".*";
          ++i;
        } else {
          re += "[^/]*";
        }
        break;
      case '?':
        re += "[^/]";
        break;
      case '.': case '+': case '(': case ')': case '[': case ']':
      case '{': case '}': case '^': case '$': case '|': case '\\':
        re += '\\';
        re += c;
        break;
      default:
        re += c;
    }
  }
  return std::regex("^" + re + "$");
}

bool matches_any(const std::string& rel_path, const std::vector<std::string>& globs,
                 const std::vector<std::regex>& regexes) {
  for (size_t i = 0; i < globs.size(); ++i) {
    const std::string& target = globs[i].find('/') == std::string::npos
                                    ? rel_path.substr(rel_path.find_last_of('/') + 1)
                                    : rel_path;
    if (std::regex_match(target, regexes[i])) return true;
  }
  return false;
}

// First error or missing node, pre-order. Null node when the tree is clean.
TSNode first_error_node(TSNode node) {
  if (!ts_node_has_error(node)) return TSNode{};
  if (ts_node_is_error(node) || ts_node_is_missing(node)) return node;
  uint32_t n = ts_node_child_count(node);
  for (uint32_t i = 0; i < n; ++i) {
    TSNode child = ts_node_child(node, i);
    if (ts_node_has_error(child)) return first_error_node(child);
  }
  return node;  // error flag with no flagged child: report the node itself
}

struct ParseSlot {
  std::unique_ptr<SourceFile> file;
  TSTree* tree = nullptr;
  bool io_failed = false;
};

}  // namespace

// Private-access shim: the parse functions assemble forests through it.
struct ForestBuilder {
  Forest forest;
  void add(std::unique_ptr<SourceFile> file, TSTree* tree) {
    forest.files_.push_back(std::move(file));
    forest.trees_.emplace_back(tree);
  }
  ParseReport& report() { return forest.report_; }
};

namespace {

void parse_slots(std::vector<ParseSlot>& slots, const TSLanguage* language, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, slots.empty() ? 1 : static_cast<unsigned>(slots.size()));

  std::atomic<size_t> next{0};
  auto worker = [&] {
    TSParser* parser = ts_parser_new();
    ts_parser_set_language(parser, language);
    for (size_t i = next.fetch_add(1); i < slots.size(); i = next.fetch_add(1)) {
      ParseSlot& slot = slots[i];
      if (slot.io_failed) continue;
      slot.tree = ts_parser_parse_string(parser, nullptr, slot.file->content.data(),
                                         static_cast<uint32_t>(slot.file->content.size()));
    }
    ts_parser_delete(parser);
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
}

Forest assemble_forest(std::vector<ParseSlot> slots, std::string_view language) {
  ForestBuilder builder;
  builder.report().grammar_version = grammar_version(language);
  for (ParseSlot& slot : slots) {
    if (slot.io_failed) {
      builder.report().issues.push_back(
          {slot.file->path, 0, 0, ParseIssue::Kind::io_failure});
      continue;
    }
    TSNode root = ts_tree_root_node(slot.tree);
    if (ts_node_has_error(root)) {
      TSNode err = first_error_node(root);
      TSPoint p = ts_node_is_null(err) ? TSPoint{0, 0} : ts_node_start_point(err);
      builder.report().issues.push_back(
          {slot.file->path, p.row, p.column, ParseIssue::Kind::syntax_error});
    }
    builder.add(std::move(slot.file), slot.tree);
  }
  builder.report().empty_forest = builder.forest.size() == 0;
  return std::move(builder.forest);
}

}  // namespace

std::string ParseReport::format_lines() const {
  std::ostringstream out;
  for (const ParseIssue& issue : issues)
    out << "PARSE-ERROR " << issue.path << ' ' << issue.row + 1 << ':' << issue.col + 1 << '\n';
  return out.str();
}

Span SyntaxNode::span() const {
  TSPoint s = ts_node_start_point(node_);
  TSPoint e = ts_node_end_point(node_);
  return {start_byte(), end_byte(), {s.row, s.column}, {e.row, e.column}};
}

std::string_view SyntaxNode::text() const {
  return std::string_view(file_->content).substr(start_byte(), end_byte() - start_byte());
}

SyntaxNode Forest::root(size_t i) const {
  return {ts_tree_root_node(trees_[i].get()), files_[i].get()};
}

std::vector<SyntaxNode> Forest::roots() const {
  std::vector<SyntaxNode> out;
  out.reserve(files_.size());
  for (size_t i = 0; i < files_.size(); ++i) out.push_back(root(i));
  return out;
}

const TSLanguage* load_grammar(std::string_view language) {
  if (language == "java") return tree_sitter_java();
  throw UnsupportedLanguageError(std::string(language));
}

std::string grammar_version(std::string_view language) {
  load_grammar(language);
  return kJavaGrammarVersion;
}

std::vector<std::string> supported_languages() { return {"java"}; }

Forest parse_sources(const std::filesystem::path& root_dir, std::string_view language,
                     const std::vector<std::string>& include_globs, unsigned threads) {
  const TSLanguage* grammar = load_grammar(language);

  std::error_code ec;
  if (!std::filesystem::is_directory(root_dir, ec))
    throw IoError("not a readable directory: " + root_dir.string());

  std::vector<std::string> globs =
      include_globs.empty() ? std::vector<std::string>{"*.java"} : include_globs;
  std::vector<std::regex> regexes;
  regexes.reserve(globs.size());
  for (const std::string& g : globs) regexes.push_back(glob_to_regex(g));

  std::vector<std::pair<std::string, std::filesystem::path>> matched;  // rel -> full
  for (auto it = std::filesystem::recursive_directory_iterator(
           root_dir, std::filesystem::directory_options::skip_permission_denied, ec);
       it != std::filesystem::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) break;
    if (!it->is_regular_file(ec)) continue;
    std::string rel = it->path().lexically_relative(root_dir).generic_string();
    if (matches_any(rel, globs, regexes)) matched.emplace_back(std::move(rel), it->path());
  }
  std::sort(matched.begin(), matched.end());

  std::vector<ParseSlot> slots;
  slots.reserve(matched.size());
  for (auto& [rel, full] : matched) {
    ParseSlot slot;
    slot.file = std::make_unique<SourceFile>();
    slot.file->path = rel;
    slot.file->language = language;
    std::ifstream in(full, std::ios::binary);
    if (!in) {
      slot.io_failed = true;
    } else {
      std::ostringstream buf;
      buf << in.rdbuf();
      slot.file->content = std::move(buf).str();
      if (!in.good() && !in.eof()) slot.io_failed = true;
    }
    slots.push_back(std::move(slot));
  }

  parse_slots(slots, grammar, threads);
  return assemble_forest(std::move(slots), language);
}

Forest parse_buffers(std::vector<std::pair<std::string, std::string>> path_content,
                     std::string_view language, unsigned threads) {
  const TSLanguage* grammar = load_grammar(language);
  std::sort(path_content.begin(), path_content.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<ParseSlot> slots;
  slots.reserve(path_content.size());
  for (auto& [path, content] : path_content) {
    ParseSlot slot;
    slot.file = std::make_unique<SourceFile>();
    slot.file->path = std::move(path);
    slot.file->content = std::move(content);
    slot.file->language = language;
    slots.push_back(std::move(slot));
  }

  parse_slots(slots, grammar, threads);
  return assemble_forest(std::move(slots), language);
}

std::vector<SyntaxNode> descendants_of_kind(SyntaxNode node,
                                            const std::set<std::string, std::less<>>& kinds) {
  std::vector<SyntaxNode> out;
  if (node.is_null() || kinds.empty()) return out;

  // Explicit-stack pre-order walk; document order by construction.
  const SourceFile* file = node.file_ptr();
  std::vector<TSNode> stack{node.raw()};
  while (!stack.empty()) {
    TSNode current = stack.back();
    stack.pop_back();
    if (kinds.count(ts_node_type(current)) > 0) out.emplace_back(current, file);
    uint32_t n = ts_node_child_count(current);
    for (uint32_t i = n; i > 0; --i) stack.push_back(ts_node_child(current, i - 1));
  }
  return out;
}

}  // namespace acer
