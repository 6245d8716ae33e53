#include "acer/syntax.hpp"

#include "support/paths.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace acer {
namespace {

TEST(LoadGrammar, JavaIsCompiledIn) {
  const TSLanguage* first = load_grammar("java");
  const TSLanguage* second = load_grammar("java");
  ASSERT_NE(first, nullptr);
  EXPECT_EQ(first, second);
}

TEST(LoadGrammar, UnknownTagThrows) {
  EXPECT_THROW(load_grammar("cobol"), UnsupportedLanguageError);
}

TEST(ParseSources, SingleFileFixture) {
  Forest forest = parse_sources(test::fixture_dir("basic_call"), "java");
  ASSERT_EQ(forest.size(), 1u);
  EXPECT_EQ(forest.file(0).path, "Example.java");

  auto classes = descendants_of_kind(forest.root(0), {"class_declaration"});
  ASSERT_EQ(classes.size(), 2u);
  EXPECT_EQ(classes[0].child_by_field("name").text(), "Bar");
  EXPECT_EQ(classes[1].child_by_field("name").text(), "Foo");
}

TEST(ParseSources, EmptyDirectoryYieldsEmptyForest) {
  Forest forest = parse_sources(test::fixture_dir("empty_dir"), "java");
  EXPECT_EQ(forest.size(), 0u);
  EXPECT_TRUE(forest.report().empty_forest);
}

TEST(ParseSources, MissingRootThrows) {
  EXPECT_THROW(parse_sources(test::fixture_dir("no_such_dir"), "java"), IoError);
}

TEST(ParseSources, SyntaxErrorsAreKeptAndReported) {
  Forest forest = parse_sources(test::fixture_dir("syntax_error"), "java");
  EXPECT_EQ(forest.size(), 3u);
  ASSERT_EQ(forest.report().issues.size(), 1u);
  EXPECT_EQ(forest.report().issues[0].path, "Bad.java");
  EXPECT_EQ(forest.report().issues[0].kind, ParseIssue::Kind::syntax_error);
  std::string lines = forest.report().format_lines();
  EXPECT_EQ(lines.rfind("PARSE-ERROR Bad.java ", 0), 0u);
}

TEST(ParseSources, PathsAreSorted) {
  Forest forest = parse_sources(test::fixture_dir("imports"), "java");
  ASSERT_EQ(forest.size(), 5u);
  std::vector<std::string> paths;
  for (size_t i = 0; i < forest.size(); ++i) paths.push_back(forest.file(i).path);
  EXPECT_TRUE(std::is_sorted(paths.begin(), paths.end()));
  EXPECT_EQ(paths.front(), "app/Main.java");
}

TEST(ParseSources, DeterministicAcrossRuns) {
  Forest a = parse_sources(test::fixture_dir("inheritance_dispatch"), "java");
  Forest b = parse_sources(test::fixture_dir("inheritance_dispatch"), "java", {}, 2);
  ASSERT_EQ(a.size(), b.size());
  auto shape = [](const Forest& f) {
    std::vector<std::pair<std::string, Span>> out;
    for (SyntaxNode root : f.roots())
      for (SyntaxNode n : descendants_of_kind(
               root, {"class_declaration", "method_declaration", "method_invocation"}))
        out.emplace_back(std::string(n.kind()), n.span());
    return out;
  };
  EXPECT_EQ(shape(a), shape(b));
}

TEST(ParseSources, RootSpanCoversEveryByte) {
  for (const char* fixture : {"basic_call", "overload_ambiguity", "receiver_census"}) {
    Forest forest = parse_sources(test::fixture_dir(fixture), "java");
    for (size_t i = 0; i < forest.size(); ++i) {
      Span span = forest.root(i).span();
      EXPECT_EQ(span.start_byte, 0u);
      EXPECT_EQ(span.end_byte, forest.file(i).content.size());
    }
  }
}

TEST(DescendantsOfKind, CountsMatchHandCounts) {
  Forest fig1 = parse_sources(test::fixture_dir("basic_call"), "java");
  EXPECT_EQ(descendants_of_kind(fig1.root(0), {"method_declaration"}).size(), 2u);

  Forest fig2 = parse_sources(test::fixture_dir("inheritance_dispatch"), "java");
  EXPECT_EQ(descendants_of_kind(fig2.root(0), {"class_declaration"}).size(), 4u);
}

TEST(DescendantsOfKind, EmptyFilterYieldsNothing) {
  Forest forest = parse_sources(test::fixture_dir("basic_call"), "java");
  EXPECT_TRUE(descendants_of_kind(forest.root(0), {}).empty());
}

TEST(DescendantsOfKind, UnionEqualsMergedQueries) {
  Forest forest = parse_sources(test::fixture_dir("receiver_census"), "java");
  SyntaxNode root = forest.root(0);
  std::set<std::string, std::less<>> k1{"method_declaration", "class_declaration"};
  std::set<std::string, std::less<>> k2{"method_invocation", "class_declaration"};
  std::set<std::string, std::less<>> all{"method_declaration", "class_declaration",
                                         "method_invocation"};

  auto key = [](SyntaxNode n) { return std::tuple(n.start_byte(), n.end_byte(), n.kind()); };
  std::set<std::tuple<uint32_t, uint32_t, std::string_view>> merged;
  for (SyntaxNode n : descendants_of_kind(root, k1)) merged.insert(key(n));
  for (SyntaxNode n : descendants_of_kind(root, k2)) merged.insert(key(n));

  std::set<std::tuple<uint32_t, uint32_t, std::string_view>> unioned;
  for (SyntaxNode n : descendants_of_kind(root, all)) unioned.insert(key(n));
  EXPECT_EQ(merged, unioned);
}

TEST(DescendantsOfKind, DocumentOrder) {
  Forest forest = parse_sources(test::fixture_dir("receiver_census"), "java");
  auto nodes = descendants_of_kind(forest.root(0), {"method_invocation", "identifier"});
  for (size_t i = 1; i < nodes.size(); ++i)
    EXPECT_LE(nodes[i - 1].start_byte(), nodes[i].start_byte());
}

}  // namespace
}  // namespace acer
