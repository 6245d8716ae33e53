#include "acer/model.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

namespace acer {
namespace {

MethodKey mk(std::string pkg, std::vector<std::string> path, std::string name, int arity,
             std::optional<std::vector<std::string>> params = std::nullopt) {
  return {{std::move(pkg), std::move(path)}, std::move(name), arity, std::move(params)};
}

CallSite site_at(std::string file, uint32_t byte, ContainerKey container,
                 std::string callee = "x", int argc = 0) {
  CallSite s;
  s.id = {std::move(file), byte};
  s.callee_name = std::move(callee);
  s.arg_count = argc;
  s.container = std::move(container);
  s.row = 1;
  s.col = byte + 1;
  return s;
}

TEST(CanonicalId, MethodInDefaultPackage) {
  EXPECT_EQ(canonical_id(mk("", {"Foo"}, "method1", 1)), "Foo#method1/1");
}

TEST(CanonicalId, ClassLevelContainer) {
  ContainerKey key{ClassLevelKey{{"", {"Foo"}}, ClassLevelKind::fields}};
  EXPECT_EQ(canonical_id(key), "Foo#<fields>");
  key = ContainerKey{ClassLevelKey{{"p", {"O", "I"}}, ClassLevelKind::static_init}};
  EXPECT_EQ(canonical_id(key), "p.O.I#<static_init>");
}

TEST(CanonicalId, InheritedDispatchTarget) {
  TargetKey target{{"", {"B"}}, mk("", {"A"}, "method", 0)};
  EXPECT_EQ(canonical_id(target), "B#method/0@A");
  TargetKey own{{"", {"A"}}, mk("", {"A"}, "method", 0)};
  EXPECT_EQ(canonical_id(own), "A#method/0");
}

TEST(CanonicalId, ParameterAliasesWhenPresent) {
  EXPECT_EQ(canonical_id(mk("", {"Bar"}, "add", 2, {{"int", "int"}})), "Bar#add/2(int,int)");
  EXPECT_EQ(canonical_id(mk("p", {"Bar"}, "add", 2, {{"float", "float"}})),
            "p.Bar#add/2(float,float)");
}

TEST(CanonicalId, InjectiveOverRandomKeys) {
  std::mt19937 rng(7);
  const std::vector<std::string> pkgs{"", "a", "a.b", "core"};
  const std::vector<std::string> names{"m", "run", "<init>", "add", "x$1"};
  const std::vector<std::string> classes{"A", "B", "Outer", "Inner", "anon$1"};

  auto random_key = [&] {
    ClassKey owner;
    owner.package = pkgs[rng() % pkgs.size()];
    int depth = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < depth; ++i) owner.class_path.push_back(classes[rng() % classes.size()]);
    MethodKey key{owner, names[rng() % names.size()], static_cast<int>(rng() % 4), std::nullopt};
    if (rng() % 3 == 0) {
      std::vector<std::string> params;
      for (int i = 0; i < key.arity; ++i)
        params.push_back(rng() % 2 ? "int" : "float");
      key.param_type_aliases = std::move(params);
    }
    return key;
  };

  std::map<std::string, MethodKey> seen;
  for (int i = 0; i < 5000; ++i) {
    MethodKey key = random_key();
    auto [it, inserted] = seen.emplace(canonical_id(key), key);
    if (!inserted) EXPECT_EQ(it->second, key) << "id collision: " << it->first;
  }
}

TEST(CallGraph, EdgeInsertionIsIdempotentAndCommutative) {
  ContainerKey src{mk("", {"Foo"}, "method1", 1)};
  std::vector<TargetKey> targets;
  for (int i = 0; i < 6; ++i)
    targets.push_back({{"", {"T" + std::to_string(i)}}, mk("", {"T" + std::to_string(i)}, "m", 0)});

  std::mt19937 rng(11);
  CallGraph base;
  for (int i = 0; i < 6; ++i)
    base.add_edge(src, targets[i], site_at("F.java", 10u * i, src));

  for (int round = 0; round < 5; ++round) {
    std::vector<int> order{0, 1, 2, 3, 4, 5, 2, 5, 0};
    std::shuffle(order.begin(), order.end(), rng);
    CallGraph shuffled;
    for (int i : order) shuffled.add_edge(src, targets[i], site_at("F.java", 10u * i, src));
    for (int i = 0; i < 6; ++i)  // duplicates again
      shuffled.add_edge(src, targets[i], site_at("F.java", 10u * i, src));
    EXPECT_EQ(shuffled.edges(), base.edges());
    EXPECT_EQ(shuffled.vertices(), base.vertices());
  }
}

TEST(CallGraph, EdgeEndpointsAreVertices) {
  ContainerKey src{ClassLevelKey{{"", {"Foo"}}, ClassLevelKind::fields}};
  TargetKey tgt{{"", {"Bar"}}, mk("", {"Bar"}, "<init>", 0)};
  CallGraph g;
  g.add_edge(src, tgt, site_at("F.java", 3, src));
  ASSERT_EQ(g.vertices().size(), 2u);
  EXPECT_TRUE(g.vertices().count("Foo#<fields>"));
  EXPECT_TRUE(g.vertices().count("Bar#<init>/0"));
  EXPECT_TRUE(g.vertices().at("Foo#<fields>").synthetic);
  EXPECT_FALSE(g.vertices().at("Bar#<init>/0").synthetic);
}

TEST(CallGraph, UnresolvedNeverOverlapsEdgeSites) {
  ContainerKey src{mk("", {"Foo"}, "m", 0)};
  CallGraph g;
  g.add_edge(src, {{"", {"T"}}, mk("", {"T"}, "x", 0)}, site_at("F.java", 1, src));
  g.add_unresolved(site_at("F.java", 2, src, "gone", 1), "nr-no-name-match");
  g.add_unresolved(site_at("F.java", 2, src, "gone", 1), "nr-no-name-match");  // de-duplicated
  ASSERT_EQ(g.unresolved().size(), 1u);
  for (const UnresolvedSite& u : g.unresolved())
    for (const GraphEdge& e : g.edges()) EXPECT_NE(u.site, e.site);
}

TEST(MergeGraphs, IdentityAndIdempotence) {
  ContainerKey src{mk("", {"Foo"}, "m", 0)};
  CallGraph g;
  g.add_edge(src, {{"", {"T"}}, mk("", {"T"}, "x", 0)}, site_at("F.java", 1, src));
  g.add_unresolved(site_at("F.java", 5, src), "why");

  CallGraph empty;
  CallGraph with_empty = merge_graphs(g, empty);
  EXPECT_EQ(with_empty.edges(), g.edges());
  EXPECT_EQ(with_empty.vertices(), g.vertices());
  EXPECT_EQ(with_empty.unresolved(), g.unresolved());

  CallGraph doubled = merge_graphs(g, g);
  EXPECT_EQ(doubled.edges(), g.edges());
  EXPECT_EQ(doubled.unresolved(), g.unresolved());
}

TEST(MergeGraphs, DisjointHalvesRecombine) {
  // the three dispatch edges of the inheritance fixture, split in two
  ContainerKey src{mk("", {"Bar"}, "foo", 1)};
  MethodKey defined = mk("", {"A"}, "method", 0);
  CallSite at = site_at("Dispatch.java", 90, src, "method", 0);

  CallGraph left, right, whole;
  left.add_edge(src, {{"", {"A"}}, defined}, at);
  right.add_edge(src, {{"", {"B"}}, defined}, at);
  right.add_edge(src, {{"", {"C"}}, defined}, at);
  whole.add_edge(src, {{"", {"A"}}, defined}, at);
  whole.add_edge(src, {{"", {"B"}}, defined}, at);
  whole.add_edge(src, {{"", {"C"}}, defined}, at);

  CallGraph merged = merge_graphs(left, right);
  EXPECT_EQ(merged.edges(), whole.edges());
  EXPECT_EQ(merged.vertices(), whole.vertices());
  EXPECT_EQ(merged.edges().size(), 3u);
}

}  // namespace
}  // namespace acer
