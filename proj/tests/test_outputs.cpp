#include "acer/outputs.hpp"

#include "acer/framework.hpp"
#include "acer/java/preprocess.hpp"
#include "acer/java/resolve.hpp"
#include "support/paths.hpp"

#include <gtest/gtest.h>

namespace acer {
namespace {

struct Workbench {
  Forest forest;
  java::JavaPreprocessor pre;

  explicit Workbench(const std::string& fixture)
      : forest(parse_sources(test::fixture_dir(fixture), "java")) {
    pre.build(forest);
  }

  CallGraph run_nr(const EntryPointFilter& filter = EntryPointFilter::all()) {
    java::JavaNrGenerator gen(pre, {});
    return generate(pre.method_dict(), gen, select_entry_points(pre.method_dict(), filter));
  }
  CallGraph run_scha(const EntryPointFilter& filter = EntryPointFilter::all()) {
    java::JavaSchaGenerator gen(pre, {});
    return generate(pre.method_dict(), gen, select_entry_points(pre.method_dict(), filter));
  }
};

TEST(EmitDot, EmptyGraph) {
  CallGraph g;
  EXPECT_EQ(emit_dot(g), "digraph acer {}\n");
}

TEST(EmitDot, KeepDispatchKeepsThreeEdges) {
  Workbench wb("inheritance_dispatch");
  CallGraph g = wb.run_scha(EntryPointFilter::name_equals("foo"));
  EXPECT_EQ(emit_dot(g, DotMode::keep_dispatch),
            "digraph acer {\n"
            "  \"A#method/0\";\n"
            "  \"B#method/0@A\";\n"
            "  \"Bar#foo/1\";\n"
            "  \"C#method/0@A\";\n"
            "  \"Bar#foo/1\" -> \"A#method/0\";\n"
            "  \"Bar#foo/1\" -> \"B#method/0@A\";\n"
            "  \"Bar#foo/1\" -> \"C#method/0@A\";\n"
            "}\n");
}

TEST(EmitDot, CollapseInheritedFoldsToOneEdge) {
  Workbench wb("inheritance_dispatch");
  CallGraph g = wb.run_scha(EntryPointFilter::name_equals("foo"));
  EXPECT_EQ(emit_dot(g, DotMode::collapse_inherited),
            "digraph acer {\n"
            "  \"A#method/0\";\n"
            "  \"Bar#foo/1\";\n"
            "  \"Bar#foo/1\" -> \"A#method/0\";\n"
            "}\n");
}

TEST(EmitJson, EmptyGraphHasEmptyArrays) {
  CallGraph g;
  LoadedGraph parsed = parse_graph_json(emit_json(g));
  EXPECT_TRUE(parsed.nodes.empty());
  EXPECT_TRUE(parsed.edges.empty());
  EXPECT_TRUE(parsed.unresolved.empty());
  EXPECT_EQ(parsed.schema_version, kGraphSchemaVersion);
}

TEST(EmitJson, BasicFixtureCounts) {
  Workbench wb("basic_call");
  LoadedGraph parsed = parse_graph_json(emit_json(wb.run_nr()));
  EXPECT_EQ(parsed.edges.size(), 1u);
  EXPECT_EQ(parsed.edges[0].src, "Foo#method1/1");
  EXPECT_EQ(parsed.edges[0].dst, "Bar#bar/0");
  EXPECT_EQ(parsed.edges[0].defined_in, "Bar#bar/0");
  EXPECT_EQ(parsed.edges[0].file, "Example.java");
  ASSERT_EQ(parsed.unresolved.size(), 1u);
  EXPECT_EQ(parsed.unresolved[0].reason, "implicit-default-constructor");
  EXPECT_EQ(parsed.unresolved[0].name, "Bar");
}

TEST(EmitJson, RoundTripPreservesEdgeSet) {
  for (const char* fixture : {"basic_call", "inheritance_dispatch", "overload_ambiguity",
                              "class_levels", "receiver_census"}) {
    Workbench wb(fixture);
    CallGraph g = wb.run_nr();
    std::string text = emit_json(g);
    LoadedGraph parsed = parse_graph_json(text);

    std::set<std::tuple<std::string, std::string, std::string>> original, reparsed;
    for (const GraphEdge& e : g.edges()) original.insert({e.src_id, e.target_id, e.site.file});
    for (const LoadedGraph::Edge& e : parsed.edges) reparsed.insert({e.src, e.dst, e.file});
    EXPECT_EQ(original, reparsed) << fixture;
    EXPECT_EQ(g.vertices().size(), parsed.nodes.size()) << fixture;
    EXPECT_EQ(g.unresolved().size(), parsed.unresolved.size()) << fixture;
  }
}

TEST(EmitJson, ByteIdenticalAcrossRuns) {
  Workbench wb("overload_ambiguity");
  std::string a = emit_json(wb.run_nr());
  Workbench wb2("overload_ambiguity");
  std::string b = emit_json(wb2.run_nr());
  EXPECT_EQ(a, b);
}

TEST(EmitJson, OverloadEdgesStayDistinct) {
  Workbench wb("overload_ambiguity");
  LoadedGraph parsed = parse_graph_json(emit_json(wb.run_nr()));
  int add_edges = 0;
  for (const LoadedGraph::Edge& e : parsed.edges)
    if (e.src == "Bar#foo/2" && e.dst.rfind("Bar#add/2", 0) == 0) ++add_edges;
  EXPECT_EQ(add_edges, 2);
}

TEST(EmitJson, SchemaMismatchThrows) {
  EXPECT_THROW(parse_graph_json("{\"schema_version\": \"acer-graph/9\"}"), SchemaError);
  EXPECT_THROW(parse_graph_json("not json"), SchemaError);
  EXPECT_THROW(parse_graph_json("{}"), SchemaError);
}

TEST(EmitCsv, HeaderAndSortedRows) {
  Workbench wb("inheritance_dispatch");
  std::string csv = emit_csv(wb.run_scha(EntryPointFilter::name_equals("foo")));
  EXPECT_EQ(csv,
            "src,dst,defined_in,file,row,col\n"
            "Bar#foo/1,A#method/0,A#method/0,Dispatch.java,7,7\n"
            "Bar#foo/1,B#method/0@A,A#method/0,Dispatch.java,7,7\n"
            "Bar#foo/1,C#method/0@A,A#method/0,Dispatch.java,7,7\n");
}

TEST(EmitCsv, FieldsWithCommasAreQuoted) {
  Workbench wb("overload_ambiguity");
  std::string csv = emit_csv(wb.run_nr());
  EXPECT_NE(csv.find("\"Bar#add/2(int,int)\""), std::string::npos);
}

TEST(Overlap, SelfOverlapIsFull) {
  Workbench wb("inheritance_dispatch");
  ProjectedEdges edges = project_edges(wb.run_scha(EntryPointFilter::name_equals("foo")));
  OverlapMatrix m = overlap({{"g", edges}, {"again", edges}});
  EXPECT_EQ(m.diagonal, (std::vector<size_t>{1, 1}));  // dispatch collapses in projection
  EXPECT_DOUBLE_EQ(m.cells[0][1], 1.0);
  EXPECT_DOUBLE_EQ(m.cells[1][0], 1.0);
  EXPECT_DOUBLE_EQ(m.cells[0][0], 1.0);
}

TEST(Overlap, DisjointGraphsShareNothing) {
  ProjectedEdges a{{"x", "y"}, {"x", "z"}};
  ProjectedEdges b{{"q", "r"}};
  OverlapMatrix m = overlap({{"a", a}, {"b", b}});
  EXPECT_EQ(m.diagonal, (std::vector<size_t>{2, 1}));
  EXPECT_DOUBLE_EQ(m.cells[0][1], 0.0);
  EXPECT_DOUBLE_EQ(m.cells[1][0], 0.0);
}

TEST(Overlap, EmptyRowIsGuarded) {
  ProjectedEdges none;
  ProjectedEdges some{{"a", "b"}};
  OverlapMatrix m = overlap({{"empty", none}, {"some", some}});
  EXPECT_EQ(m.diagonal[0], 0u);
  EXPECT_DOUBLE_EQ(m.cells[0][0], 0.0);
  EXPECT_DOUBLE_EQ(m.cells[0][1], 0.0);
  EXPECT_DOUBLE_EQ(m.cells[1][1], 1.0);
}

TEST(Overlap, SchaContainedInNrOnFixtures) {
  Workbench wb("inheritance_dispatch");
  ProjectedEdges nr = project_edges(wb.run_nr());
  ProjectedEdges scha = project_edges(wb.run_scha());
  OverlapMatrix m = overlap({{"NR", nr}, {"SCHA", scha}});
  EXPECT_DOUBLE_EQ(m.cells[1][0], 1.0);  // SCHA row, NR column
  std::string table = format_overlap(m);
  EXPECT_NE(table.find("100.0%"), std::string::npos);
}

TEST(FormatOverlap, TableLayout) {
  ProjectedEdges a{{"x", "y"}, {"x", "z"}, {"y", "z"}};
  ProjectedEdges b{{"x", "y"}};
  OverlapMatrix m = overlap({{"NR", a}, {"SCHA", b}});
  EXPECT_EQ(format_overlap(m),
            "      NR      SCHA\n"
            "NR    3       33.3%\n"
            "SCHA  100.0%  1\n");
}

TEST(Census, HandBuiltFixtureExactCounts) {
  Forest forest = parse_sources(test::fixture_dir("receiver_census"), "java");
  ReceiverCensus c = census(forest);
  EXPECT_EQ(c.total, 7u);
  EXPECT_EQ(c.count(ReceiverKind::Tag::implicit), 2u);  // helper() and make()
  EXPECT_EQ(c.count(ReceiverKind::Tag::explicit_this), 1u);
  EXPECT_EQ(c.count(ReceiverKind::Tag::identifier), 1u);
  EXPECT_EQ(c.count(ReceiverKind::Tag::field_access), 1u);
  EXPECT_EQ(c.count(ReceiverKind::Tag::method_invocation), 1u);
  EXPECT_EQ(c.count(ReceiverKind::Tag::other), 1u);
}

TEST(Census, TotalsMatchDirectTreeQuery) {
  for (const char* fixture : {"basic_call", "class_levels", "receiver_census", "varargs"}) {
    Forest forest = parse_sources(test::fixture_dir(fixture), "java");
    size_t direct = 0;
    for (SyntaxNode root : forest.roots())
      direct += descendants_of_kind(root, {"method_invocation"}).size();
    EXPECT_EQ(census(forest).total, direct) << fixture;
  }
}

TEST(Census, ZeroInvocationsEmitNoShares) {
  Forest forest = parse_sources(test::fixture_dir("interface_diamond"), "java");
  ReceiverCensus c = census(forest);
  EXPECT_EQ(c.total, 0u);
  std::string table = format_census(c);
  EXPECT_EQ(table.find('%'), std::string::npos);
}

}  // namespace
}  // namespace acer

namespace acer {
namespace {

TEST(Overlap, ThreeGraphsKeepArgumentOrder) {
  ProjectedEdges a{{"x", "y"}};
  ProjectedEdges b{{"x", "y"}, {"y", "z"}};
  ProjectedEdges c{{"q", "r"}};
  OverlapMatrix m = overlap({{"first", a}, {"second", b}, {"third", c}});
  EXPECT_EQ(m.labels, (std::vector<std::string>{"first", "second", "third"}));
  EXPECT_EQ(m.diagonal, (std::vector<size_t>{1, 2, 1}));
  EXPECT_DOUBLE_EQ(m.cells[0][1], 1.0);  // a fully inside b
  EXPECT_DOUBLE_EQ(m.cells[1][0], 0.5);
  EXPECT_DOUBLE_EQ(m.cells[2][0], 0.0);
}

}  // namespace
}  // namespace acer
