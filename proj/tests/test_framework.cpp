#include "acer/framework.hpp"

#include "acer/java/preprocess.hpp"
#include "acer/java/resolve.hpp"
#include "support/paths.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

namespace acer {
namespace {

struct Workbench {
  Forest forest;
  java::JavaPreprocessor pre;

  explicit Workbench(const std::string& fixture)
      : forest(parse_sources(test::fixture_dir(fixture), "java")) {
    pre.build(forest);
  }

  std::vector<MethodKey> entries(const EntryPointFilter& filter) const {
    return select_entry_points(pre.method_dict(), filter);
  }
};

std::vector<std::string> ids_of(const std::vector<MethodKey>& keys) {
  std::vector<std::string> out;
  for (const MethodKey& k : keys) out.push_back(canonical_id(k));
  return out;
}

std::vector<std::string> edge_ids(const CallGraph& g) {
  std::vector<std::string> out;
  for (const GraphEdge& e : g.edges()) out.push_back(e.src_id + " -> " + e.target_id);
  return out;
}

TEST(SelectEntryPoints, AllMethodsCanonicalOrder) {
  Workbench wb("basic_call");
  EXPECT_EQ(ids_of(wb.entries(EntryPointFilter::all())),
            (std::vector<std::string>{"Bar#bar/0", "Foo#method1/1"}));
}

TEST(SelectEntryPoints, NameFilterCanMatchNothing) {
  Workbench wb("basic_call");
  EXPECT_TRUE(wb.entries(EntryPointFilter::name_equals("main")).empty());
}

TEST(SelectEntryPoints, NameFilterFindsFoo) {
  Workbench wb("inheritance_dispatch");
  EXPECT_EQ(ids_of(wb.entries(EntryPointFilter::name_equals("foo"))),
            (std::vector<std::string>{"Bar#foo/1"}));
}

TEST(SelectEntryPoints, RegexMatchesCanonicalIds) {
  Workbench wb("inheritance_dispatch");
  EXPECT_EQ(ids_of(wb.entries(EntryPointFilter::matching("^Bar#"))),
            (std::vector<std::string>{"Bar#foo/1"}));
}

TEST(EntryPointFilter, SpecGrammarRoundTrips) {
  EXPECT_EQ(EntryPointFilter::parse("all").kind, EntryPointFilter::Kind::all_methods);
  EXPECT_EQ(EntryPointFilter::parse("name=main").arg, "main");
  EXPECT_EQ(EntryPointFilter::parse("regex=^a$").arg, "^a$");
  EXPECT_THROW(EntryPointFilter::parse("names=x"), std::invalid_argument);
  EXPECT_EQ(EntryPointFilter::parse("name=main").spec(), "name=main");
}

TEST(Generate, BasicFixtureNrAllMethods) {
  Workbench wb("basic_call");
  java::JavaNrGenerator gen(wb.pre, {});
  auto entries = wb.entries(EntryPointFilter::all());
  CallGraph g = generate(wb.pre.method_dict(), gen, entries);

  EXPECT_EQ(edge_ids(g), (std::vector<std::string>{"Foo#method1/1 -> Bar#bar/0"}));
  ASSERT_EQ(g.unresolved().size(), 1u);
  const UnresolvedSite& u = *g.unresolved().begin();
  EXPECT_EQ(u.name, "Bar");
  EXPECT_EQ(u.reason, "implicit-default-constructor");
}

TEST(Generate, NoEntriesNoGraph) {
  Workbench wb("basic_call");
  java::JavaNrGenerator gen(wb.pre, {});
  CallGraph g = generate(wb.pre.method_dict(), gen, {});
  EXPECT_TRUE(g.edges().empty());
  EXPECT_TRUE(g.unresolved().empty());
  EXPECT_TRUE(g.vertices().empty());
}

TEST(Generate, InheritanceFixtureSchaFromFoo) {
  Workbench wb("inheritance_dispatch");
  java::JavaSchaGenerator gen(wb.pre, {});
  auto entries = wb.entries(EntryPointFilter::name_equals("foo"));
  CallGraph g = generate(wb.pre.method_dict(), gen, entries);
  EXPECT_EQ(edge_ids(g),
            (std::vector<std::string>{"Bar#foo/1 -> A#method/0", "Bar#foo/1 -> B#method/0@A",
                                      "Bar#foo/1 -> C#method/0@A"}));
  EXPECT_TRUE(g.unresolved().empty());
}

TEST(Generate, ClassLevelContainersSeedOncePerClass) {
  Workbench wb("class_levels");
  java::JavaNrGenerator gen(wb.pre, {});
  auto entries = wb.entries(EntryPointFilter::all());
  CallGraph g = generate(wb.pre.method_dict(), gen, entries);

  std::map<std::string, int> per_container;
  for (const GraphEdge& e : g.edges()) ++per_container[e.src_id];
  EXPECT_TRUE(per_container.count("Init#<fields>"));
  EXPECT_TRUE(per_container.count("Init#<static_init>"));
  EXPECT_TRUE(per_container.count("Init#<instance_init>"));
  // Helper.make() and new Helper() both resolve from the fields container
  EXPECT_EQ(per_container["Init#<fields>"], 2);
}

TEST(Generate, VisitedSetPreventsReResolution) {
  struct CountingGenerator final : Generator {
    const Generator& inner;
    mutable std::map<std::pair<std::string, uint32_t>, int> counts;
    explicit CountingGenerator(const Generator& g) : inner(g) {}
    std::vector<CallSite> seek_call_sites(const ContainerKey& c, SyntaxNode b) const override {
      return inner.seek_call_sites(c, b);
    }
    std::vector<CallSite> class_level_sites(const MethodKey& e) const override {
      return inner.class_level_sites(e);
    }
    Resolution resolve(const Context& ctx, const CallSite& s) const override {
      ++counts[{s.id.file, s.id.byte}];
      return inner.resolve(ctx, s);
    }
  };

  Workbench wb("receiver_census");
  java::JavaNrGenerator gen(wb.pre, {});
  CountingGenerator counting(gen);
  auto entries = wb.entries(EntryPointFilter::all());
  generate(wb.pre.method_dict(), counting, entries);
  for (const auto& [site, count] : counting.counts) EXPECT_EQ(count, 1);
  EXPECT_FALSE(counting.counts.empty());
}

TEST(Generate, MonotoneInEntries) {
  Workbench wb("class_levels");
  java::JavaNrGenerator gen(wb.pre, {});
  auto all = wb.entries(EntryPointFilter::all());
  CallGraph whole = generate(wb.pre.method_dict(), gen, all);

  for (size_t take = 0; take <= all.size(); ++take) {
    std::vector<MethodKey> some(all.begin(), all.begin() + take);
    CallGraph part = generate(wb.pre.method_dict(), gen, some);
    for (const GraphEdge& e : part.edges())
      EXPECT_TRUE(whole.edges().count(e)) << e.src_id << " -> " << e.target_id;
  }
}

TEST(Generate, ReachabilityOnlyFromEntries) {
  Workbench wb("class_levels");
  java::JavaNrGenerator gen(wb.pre, {});
  // boot() calls nothing; seeding only from Helper#make keeps Init regions out
  std::vector<MethodKey> one;
  for (const MethodKey& k : wb.entries(EntryPointFilter::all()))
    if (canonical_id(k) == "Helper#make/0") one.push_back(k);
  ASSERT_EQ(one.size(), 1u);
  CallGraph g = generate(wb.pre.method_dict(), gen, one);
  for (const GraphEdge& e : g.edges()) {
    EXPECT_NE(e.src_id.rfind("Init#", 0), 0u) << e.src_id;
  }
}

TEST(Generate, DeterministicAcrossRuns) {
  Workbench wb("receiver_census");
  java::JavaNrGenerator gen(wb.pre, {});
  auto entries = wb.entries(EntryPointFilter::all());
  CallGraph a = generate(wb.pre.method_dict(), gen, entries);
  CallGraph b = generate(wb.pre.method_dict(), gen, entries);
  EXPECT_EQ(a.edges(), b.edges());
  EXPECT_EQ(a.unresolved(), b.unresolved());
}

TEST(PreprocessorContract, ValidateDetectsViolation) {
  struct BrokenPreprocessor final : Preprocessor {
    void build(const Forest&, unsigned) override {
      unique_dict_[NonUniqueKey::name_arity("ghost", 0)].insert(
          MethodKey{{"", {"G"}}, "ghost", 0, std::nullopt});
    }
  };
  BrokenPreprocessor broken;
  Forest empty;
  broken.build(empty, 0);
  EXPECT_THROW(broken.validate_contract(), std::logic_error);
}

}  // namespace
}  // namespace acer
