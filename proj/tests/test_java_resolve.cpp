#include "acer/java/resolve.hpp"

#include "support/paths.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace acer::java {
namespace {

struct Workbench {
  Forest forest;
  JavaPreprocessor pre;

  explicit Workbench(const std::string& fixture)
      : forest(parse_sources(test::fixture_dir(fixture), "java")) {
    pre.build(forest);
  }

  MethodKey key(const std::string& id) const {
    for (const auto& [key, body] : pre.method_dict())
      if (canonical_id(key) == id) return key;
    ADD_FAILURE() << "no method " << id;
    return {};
  }

  std::vector<CallSite> sites_of(const std::string& id) const {
    MethodKey k = key(id);
    ContainerKey container{k};
    return seek_call_sites_java(container, pre.method_dict().at(k));
  }

  CallSite site_of(const std::string& id, const std::string& callee) const {
    for (const CallSite& s : sites_of(id))
      if (s.callee_name == callee) return s;
    ADD_FAILURE() << "no site calling " << callee << " in " << id;
    return {};
  }

  std::vector<std::string> target_ids(const Resolution& r) const {
    std::vector<std::string> out;
    for (const auto& [ctx, t] : r.targets) out.push_back(canonical_id(t));
    return out;
  }
};

TEST(SeekCallSites, BasicFixtureReceiverAndCounts) {
  Workbench wb("basic_call");
  auto sites = wb.sites_of("Foo#method1/1");
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(sites[0].callee_name, "bar");
  EXPECT_EQ(sites[0].arg_count, 0);
  EXPECT_EQ(sites[0].kind, SiteKind::method_invocation);
  EXPECT_EQ(sites[0].receiver, ReceiverKind::identifier("b"));
  EXPECT_TRUE(wb.sites_of("Bar#bar/0").empty());
}

TEST(SeekCallSites, WholeFixtureFindsExactlyTwoSites) {
  Workbench wb("basic_call");
  size_t total = 0;
  for (const auto& [key, body] : wb.pre.method_dict()) {
    ContainerKey container{key};
    total += seek_call_sites_java(container, body).size();
  }
  for (const auto& [qualified, node] : wb.pre.class_nodes()) {
    const ClassRecord* record = wb.pre.record_for(qualified);
    ASSERT_NE(record, nullptr);
    total += seek_class_level_sites(node, record->key).size();
  }
  EXPECT_EQ(total, 2u);
}

TEST(SeekCallSites, ObjectCreationHasNoReceiver) {
  Workbench wb("class_levels");
  auto sites = seek_class_level_sites(wb.pre.class_nodes().at("Init"),
                                      wb.pre.record_for("Init")->key);
  ASSERT_EQ(sites.size(), 4u);  // Helper.make(), new Helper(), boot(), warm()
  EXPECT_EQ(sites[0].callee_name, "make");
  EXPECT_EQ(sites[0].receiver, ReceiverKind::identifier("Helper"));
  EXPECT_EQ(canonical_id(sites[0].container), "Init#<fields>");
  EXPECT_EQ(sites[1].kind, SiteKind::object_creation);
  EXPECT_EQ(sites[1].receiver, ReceiverKind::other("none"));
  EXPECT_EQ(canonical_id(sites[1].container), "Init#<fields>");
  EXPECT_EQ(canonical_id(sites[2].container), "Init#<static_init>");
  EXPECT_EQ(sites[2].callee_name, "boot");
  EXPECT_EQ(canonical_id(sites[3].container), "Init#<instance_init>");
  EXPECT_EQ(sites[3].callee_name, "warm");
}

TEST(SeekCallSites, EmptyClassBodyHasNoClassLevelSites) {
  Workbench wb("inheritance_dispatch");
  auto sites = seek_class_level_sites(wb.pre.class_nodes().at("B"), wb.pre.record_for("B")->key);
  EXPECT_TRUE(sites.empty());
}

TEST(ClassifyReceiver, AllKindsInCensusFixture) {
  Workbench wb("receiver_census");
  EXPECT_EQ(wb.site_of("Receivers#implicitCall/0", "helper").receiver, ReceiverKind::implicit());
  EXPECT_EQ(wb.site_of("Receivers#explicitThisCall/0", "helper").receiver,
            ReceiverKind::explicit_this());
  EXPECT_EQ(wb.site_of("Receivers#identifierCall/0", "run").receiver,
            ReceiverKind::identifier("h"));
  EXPECT_EQ(wb.site_of("Receivers#fieldChainCall/0", "poke").receiver,
            ReceiverKind::field_access());
  EXPECT_EQ(wb.site_of("Receivers#invocationChainCall/0", "run").receiver,
            ReceiverKind::method_invocation());
  EXPECT_EQ(wb.site_of("Receivers#superCall/0", "hashCode").receiver,
            ReceiverKind::other("super"));
}

TEST(ResolveNr, OverloadSiteReturnsBothTargets) {
  Workbench wb("overload_ambiguity");
  CallSite add = wb.site_of("Bar#foo/2", "add");
  Resolution r = resolve_nr(add, wb.pre, {});
  EXPECT_EQ(wb.target_ids(r),
            (std::vector<std::string>{"Bar#add/2(float,float)", "Bar#add/2(int,int)"}));
}

TEST(ResolveNr, UnknownNameIsUnresolved) {
  Workbench wb("overload_ambiguity");
  CallSite size_call = wb.site_of("Bar#foo/2", "size");
  Resolution r = resolve_nr(size_call, wb.pre, {});
  EXPECT_TRUE(r.targets.empty());
  EXPECT_EQ(r.empty_reason, kReasonNrNoNameMatch);
}

TEST(ResolveNr, ImplicitDefaultConstructor) {
  Workbench wb("basic_call");
  auto field_sites = seek_class_level_sites(wb.pre.class_nodes().at("Foo"),
                                            wb.pre.record_for("Foo")->key);
  ASSERT_EQ(field_sites.size(), 1u);
  EXPECT_EQ(field_sites[0].kind, SiteKind::object_creation);
  Resolution r = resolve_nr(field_sites[0], wb.pre, {});
  EXPECT_TRUE(r.targets.empty());
  EXPECT_EQ(r.empty_reason, kReasonImplicitDefaultCtor);
}

TEST(ResolveNr, IgnoresReceiverEntirely) {
  Workbench wb("basic_call");
  CallSite site = wb.site_of("Foo#method1/1", "bar");
  Resolution base = resolve_nr(site, wb.pre, {});
  for (ReceiverKind mutated :
       {ReceiverKind::implicit(), ReceiverKind::explicit_this(), ReceiverKind::identifier("zz"),
        ReceiverKind::field_access(), ReceiverKind::method_invocation(),
        ReceiverKind::other("parenthesized_expression")}) {
    CallSite copy = site;
    copy.receiver = mutated;
    EXPECT_EQ(wb.target_ids(resolve_nr(copy, wb.pre, {})), wb.target_ids(base));
  }
}

TEST(ResolveNr, NameOnlyModeUnionsArities) {
  Workbench wb("varargs");
  CallSite site = wb.site_of("Var#caller/0", "sum");
  ResolutionConfig name_only;
  name_only.nr_use_arity = false;
  Resolution r = resolve_nr(site, wb.pre, name_only);
  EXPECT_EQ(wb.target_ids(r), (std::vector<std::string>{"Var#sum/1"}));
}

TEST(FindDeclaration, ParameterWins) {
  Workbench wb("basic_call");
  CallSite site = wb.site_of("Foo#method1/1", "bar");
  DeclarationSite decl = find_declaration("b", site.node, wb.pre);
  EXPECT_EQ(decl.kind, DeclarationSite::Kind::param);
  EXPECT_EQ(decl.type_alias, "Bar");
}

TEST(FindDeclaration, FieldFallback) {
  Workbench wb("declaration_scopes");
  auto sites = wb.sites_of("Shadow#fieldThenLocal/0");
  ASSERT_EQ(sites.size(), 3u);  // x.m(), new B(), x.m()
  DeclarationSite before = find_declaration("x", sites[0].node, wb.pre);
  EXPECT_EQ(before.kind, DeclarationSite::Kind::field);
  EXPECT_EQ(before.type_alias, "A");
  EXPECT_EQ(before.owner_class, "Shadow");
  DeclarationSite after = find_declaration("x", sites[2].node, wb.pre);
  EXPECT_EQ(after.kind, DeclarationSite::Kind::local_var);
  EXPECT_EQ(after.type_alias, "B");
}

TEST(FindDeclaration, ParamShadowsField) {
  Workbench wb("declaration_scopes");
  CallSite site = wb.site_of("Shadow#paramWins/1", "m");
  DeclarationSite decl = find_declaration("x", site.node, wb.pre);
  EXPECT_EQ(decl.kind, DeclarationSite::Kind::param);
  EXPECT_EQ(decl.type_alias, "B");
}

TEST(FindDeclaration, InheritedFieldThroughAliasMatchedSupertype) {
  Workbench wb("declaration_scopes");
  CallSite site = wb.site_of("Shadow#inheritedField/0", "m");
  DeclarationSite decl = find_declaration("inherited", site.node, wb.pre);
  EXPECT_EQ(decl.kind, DeclarationSite::Kind::field);
  EXPECT_EQ(decl.type_alias, "D");
  EXPECT_EQ(decl.owner_class, "Base");
}

TEST(FindDeclaration, EnhancedForBindsLoopVariable) {
  Workbench wb("declaration_scopes");
  CallSite site = wb.site_of("Shadow#loops/1", "m");
  DeclarationSite decl = find_declaration("x", site.node, wb.pre);
  EXPECT_EQ(decl.kind, DeclarationSite::Kind::local_var);
  EXPECT_EQ(decl.type_alias, "C");
}

TEST(FindDeclaration, UnknownIdentifier) {
  Workbench wb("basic_call");
  CallSite site = wb.site_of("Foo#method1/1", "bar");
  EXPECT_FALSE(find_declaration("nothere", site.node, wb.pre).found());
}

TEST(ResolveScha, SubtypeExpansionMatchesDispatchSemantics) {
  Workbench wb("inheritance_dispatch");
  CallSite site = wb.site_of("Bar#foo/1", "method");
  Resolution r = resolve_scha(site, wb.pre, {});
  EXPECT_EQ(wb.target_ids(r),
            (std::vector<std::string>{"A#method/0", "B#method/0@A", "C#method/0@A"}));

  ResolutionConfig no_expand;
  no_expand.scha_expand_subtypes = false;
  Resolution narrow = resolve_scha(site, wb.pre, no_expand);
  EXPECT_EQ(wb.target_ids(narrow), (std::vector<std::string>{"A#method/0"}));
}

TEST(ResolveScha, ComplexReceiversAreSkipped) {
  Workbench wb("receiver_census");
  CallSite chained = wb.site_of("Receivers#invocationChainCall/0", "run");
  Resolution r = resolve_scha(chained, wb.pre, {});
  EXPECT_TRUE(r.targets.empty());
  EXPECT_EQ(r.empty_reason, kReasonSchaComplexReceiver);

  CallSite field_chain = wb.site_of("Receivers#fieldChainCall/0", "poke");
  EXPECT_EQ(resolve_scha(field_chain, wb.pre, {}).empty_reason, kReasonSchaComplexReceiver);
}

TEST(ResolveScha, ImplicitThisResolvesInOwnClass) {
  Workbench wb("receiver_census");
  CallSite site = wb.site_of("Receivers#implicitCall/0", "helper");
  Resolution r = resolve_scha(site, wb.pre, {});
  EXPECT_EQ(wb.target_ids(r), (std::vector<std::string>{"Receivers#helper/0"}));
}

TEST(ResolveScha, UnknownAliasReceiver) {
  Workbench wb("overload_ambiguity");
  // l1.size(): l1 is a library List, unresolvable application-only
  CallSite site = wb.site_of("Bar#foo/2", "size");
  Resolution r = resolve_scha(site, wb.pre, {});
  EXPECT_TRUE(r.targets.empty());
  EXPECT_EQ(r.empty_reason, kReasonSchaUnknownAlias);
}

TEST(ResolveScha, ClassNameReceiverResolvesStatically) {
  Workbench wb("static_call");
  CallSite site = wb.site_of("K#f/0", "max");
  Resolution r = resolve_scha(site, wb.pre, {});
  EXPECT_EQ(wb.target_ids(r), (std::vector<std::string>{"Util2#max/2"}));
}

TEST(ResolveScha, AbstractDeclarationsAreDroppedForBodies) {
  Workbench wb("abstract_dispatch");
  CallSite site = wb.site_of("User#use/1", "m");
  Resolution r = resolve_scha(site, wb.pre, {});
  // the interface declares m() without a body; only X implements it
  EXPECT_EQ(wb.target_ids(r), (std::vector<std::string>{"X#m/0"}));
}

TEST(ResolveScha, InheritedLookupWalksToNearestDeclarer) {
  Forest forest = parse_buffers({{"Chain.java",
                                  "class Top { void go() {} }\n"
                                  "class Mid extends Top {}\n"
                                  "class Low extends Mid {}\n"
                                  "class Use { void u(Low x) { x.go(); } }\n"}},
                                "java");
  JavaPreprocessor pre;
  pre.build(forest);
  ContainerKey container{[&] {
    for (const auto& [k, b] : pre.method_dict())
      if (k.name == "u") return k;
    return MethodKey{};
  }()};
  auto sites = seek_call_sites_java(container, [&] {
    for (const auto& [k, b] : pre.method_dict())
      if (k.name == "u") return b;
    return SyntaxNode{};
  }());
  ASSERT_EQ(sites.size(), 1u);
  Resolution r = resolve_scha(sites[0], pre, {});
  std::vector<std::string> ids;
  for (const auto& [ctx, t] : r.targets) ids.push_back(canonical_id(t));
  EXPECT_EQ(ids, (std::vector<std::string>{"Low#go/0@Top"}));
}

TEST(ResolveScha, QualifyWithImportsRestrictsCollisions) {
  Workbench wb("imports");
  CallSite site = wb.site_of("app.Main#run/0", "go");
  // Util is ambiguous by alias: q.Util and r.Util both match
  Resolution loose = resolve_scha(site, wb.pre, {});
  EXPECT_EQ(wb.target_ids(loose),
            (std::vector<std::string>{"q.Util#go/0", "r.Util#go/0"}));
  ResolutionConfig qualified;
  qualified.scha_qualify_with_imports = true;
  Resolution strict = resolve_scha(site, wb.pre, qualified);
  EXPECT_EQ(wb.target_ids(strict),
            (std::vector<std::string>{"q.Util#go/0", "r.Util#go/0"}));
}

}  // namespace
}  // namespace acer::java

namespace acer::java {
namespace {

TEST(SeekCallSites, LambdaBodiesAttributeToEnclosingMethod) {
  Forest forest = parse_buffers(
      {{"Lam.java",
        "class Lam {\n"
        "    void out() {\n"
        "        Runnable r = () -> { helper(); };\n"
        "        java.util.function.Function<Integer, Integer> f = (Integer x) -> bump(x);\n"
        "    }\n"
        "    void helper() {}\n"
        "    int bump(int x) { return x; }\n"
        "}\n"}},
      "java");
  JavaPreprocessor pre;
  pre.build(forest);
  MethodKey out;
  for (const auto& [k, b] : pre.method_dict())
    if (k.name == "out") out = k;
  ContainerKey container{out};
  auto sites = seek_call_sites_java(container, pre.method_dict().at(out));
  ASSERT_EQ(sites.size(), 2u);
  EXPECT_EQ(sites[0].callee_name, "helper");
  EXPECT_EQ(canonical_id(sites[0].container), "Lam#out/0");
  EXPECT_EQ(sites[1].callee_name, "bump");
}

TEST(SeekCallSites, EnumConstantArgumentsAreFieldsSites) {
  Forest forest = parse_buffers(
      {{"Level.java",
        "enum Level {\n"
        "    LOW(base()),\n"
        "    HIGH(base() + 1);\n"
        "    Level(int n) {}\n"
        "    static int base() { return 1; }\n"
        "}\n"}},
      "java");
  JavaPreprocessor pre;
  pre.build(forest);
  auto sites = seek_class_level_sites(pre.class_nodes().at("Level"),
                                      pre.record_for("Level")->key);
  ASSERT_EQ(sites.size(), 2u);
  for (const CallSite& s : sites) {
    EXPECT_EQ(s.callee_name, "base");
    EXPECT_EQ(canonical_id(s.container), "Level#<fields>");
  }
}

TEST(ResolveScha, VarargsSitesMatchDeclaredCount) {
  Forest forest = parse_sources(test::fixture_dir("varargs"), "java");
  JavaPreprocessor pre;
  pre.build(forest);
  MethodKey caller;
  for (const auto& [k, b] : pre.method_dict())
    if (k.name == "caller") caller = k;
  ContainerKey container{caller};
  auto sites = seek_call_sites_java(container, pre.method_dict().at(caller));
  ASSERT_EQ(sites.size(), 3u);
  for (const CallSite& s : sites) {
    Resolution r = resolve_scha(s, pre, {});
    std::vector<std::string> ids;
    for (const auto& [ctx, t] : r.targets) ids.push_back(canonical_id(t));
    EXPECT_EQ(ids, (std::vector<std::string>{"Var#sum/1"})) << s.arg_count;
  }
}

}  // namespace
}  // namespace acer::java
