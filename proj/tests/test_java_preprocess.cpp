#include "acer/java/preprocess.hpp"

#include "support/paths.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace acer::java {
namespace {

Forest parse_fixture(const std::string& name) {
  return parse_sources(test::fixture_dir(name), "java");
}

JavaPreprocessor build(const Forest& forest) {
  JavaPreprocessor pre;
  pre.build(forest);
  return pre;
}

std::vector<std::string> dict_ids(const JavaPreprocessor& pre) {
  std::vector<std::string> ids;
  for (const auto& [key, body] : pre.method_dict()) ids.push_back(canonical_id(key));
  std::sort(ids.begin(), ids.end());
  return ids;
}

TEST(MethodDict, BasicFixture) {
  Forest forest = parse_fixture("basic_call");
  JavaPreprocessor pre = build(forest);
  EXPECT_EQ(dict_ids(pre), (std::vector<std::string>{"Bar#bar/0", "Foo#method1/1"}));
  EXPECT_TRUE(pre.warnings().empty());
}

TEST(MethodDict, InheritanceFixtureHasOnlyDeclaredBodies) {
  Forest forest = parse_fixture("inheritance_dispatch");
  JavaPreprocessor pre = build(forest);
  EXPECT_EQ(dict_ids(pre), (std::vector<std::string>{"A#method/0", "Bar#foo/1"}));
}

TEST(MethodDict, OverloadsAtSameArityStayDistinct) {
  Forest forest = parse_fixture("overload_ambiguity");
  JavaPreprocessor pre = build(forest);
  EXPECT_EQ(dict_ids(pre),
            (std::vector<std::string>{"Bar#add/2(float,float)", "Bar#add/2(int,int)",
                                      "Bar#foo/2"}));
  ASSERT_EQ(pre.warnings().size(), 1u);
  EXPECT_EQ(pre.warnings()[0].code, "duplicate-key");
}

TEST(MethodDict, TrueDuplicateKeepsLaterDeclaration) {
  Forest forest = parse_fixture("duplicate_default");
  JavaPreprocessor pre = build(forest);
  EXPECT_EQ(dict_ids(pre), (std::vector<std::string>{"Dup#go/0"}));
  ASSERT_EQ(pre.warnings().size(), 1u);
  auto it = pre.method_dict().begin();
  EXPECT_EQ(it->second.file().path, "Dup2.java");
}

TEST(UniqueDict, NameArityCoversOverloads) {
  Forest forest = parse_fixture("overload_ambiguity");
  JavaPreprocessor pre = build(forest);
  const auto& dict = pre.unique_dict();
  auto hit = dict.find(NonUniqueKey::name_arity("add", 2));
  ASSERT_NE(hit, dict.end());
  EXPECT_EQ(hit->second.size(), 2u);
  auto alias_hit = dict.find(NonUniqueKey::alias_name_arity("Bar", "add", 2));
  ASSERT_NE(alias_hit, dict.end());
  EXPECT_EQ(alias_hit->second.size(), 2u);
}

TEST(UniqueDict, EmptyForestYieldsEmptyDicts) {
  Forest forest = parse_fixture("empty_dir");
  JavaPreprocessor pre = build(forest);
  EXPECT_TRUE(pre.method_dict().empty());
  EXPECT_TRUE(pre.unique_dict().empty());
}

TEST(UniqueDict, AliasFamilySingleDeclaration) {
  Forest forest = parse_fixture("inheritance_dispatch");
  JavaPreprocessor pre = build(forest);
  auto hit = pre.unique_dict().find(NonUniqueKey::alias_name_arity("A", "method", 0));
  ASSERT_NE(hit, pre.unique_dict().end());
  ASSERT_EQ(hit->second.size(), 1u);
  EXPECT_EQ(canonical_id(*hit->second.begin()), "A#method/0");
}

TEST(UniqueDict, ContractInvariantHoldsOnFixtures) {
  for (const char* name : {"basic_call", "overload_ambiguity", "class_levels", "imports",
                           "nested_types", "varargs", "receiver_census"}) {
    Forest forest = parse_fixture(name);
    JavaPreprocessor pre = build(forest);
    EXPECT_NO_THROW(pre.validate_contract()) << name;
    for (const auto& [nk, keys] : pre.unique_dict()) {
      EXPECT_FALSE(keys.empty());
      for (const MethodKey& key : keys) EXPECT_TRUE(pre.method_dict().count(key));
    }
  }
}

TEST(PackageImportables, DefaultPackageExports) {
  Forest forest = parse_fixture("basic_call");
  JavaPreprocessor pre = build(forest);
  const auto& importables = pre.package_importables();
  ASSERT_TRUE(importables.count(""));
  EXPECT_EQ(importables.at("").size(), 2u);
  EXPECT_EQ(importables.at("").at("Bar"), "Bar");
  EXPECT_EQ(importables.at("").at("Foo"), "Foo");
}

TEST(PackageImportables, NestedTypesExportDottedNames) {
  Forest forest = parse_fixture("nested_types");
  JavaPreprocessor pre = build(forest);
  const auto& p = pre.package_importables().at("p");
  EXPECT_EQ(p.at("O"), "p.O");
  EXPECT_EQ(p.at("O.I"), "p.O.I");
}

TEST(ClassCache, SubclassLinksAreInverted) {
  Forest forest = parse_fixture("inheritance_dispatch");
  JavaPreprocessor pre = build(forest);
  EXPECT_EQ(pre.class_cache().at("A").subclasses, (std::set<std::string>{"B"}));
  EXPECT_EQ(pre.class_cache().at("B").subclasses, (std::set<std::string>{"C"}));
  EXPECT_EQ(pre.transitive_subclasses("A"), (std::vector<std::string>{"B", "C"}));
  EXPECT_TRUE(pre.class_cache().at("Bar").subclasses.empty());
}

TEST(ClassCache, InterfaceDiamond) {
  Forest forest = parse_fixture("interface_diamond");
  JavaPreprocessor pre = build(forest);
  EXPECT_EQ(pre.class_cache().at("I").subclasses, (std::set<std::string>{"X", "Y"}));
  EXPECT_TRUE(pre.class_cache().at("I").is_abstract);
  EXPECT_EQ(pre.class_cache().at("I").kind, ClassRecord::Kind::interface_type);
}

TEST(ClassCache, FieldsAndSignatures) {
  Forest forest = parse_fixture("basic_call");
  JavaPreprocessor pre = build(forest);
  const ClassRecord& foo = pre.class_cache().at("Foo");
  EXPECT_EQ(foo.fields.at("b"), "Bar");
  EXPECT_TRUE(foo.method_sigs.count({"method1", 1}));
  EXPECT_TRUE(pre.class_cache().at("Bar").method_sigs.count({"bar", 0}));
}

TEST(ImportTable, WildcardOrderAndExplicit) {
  Forest forest = parse_fixture("imports");
  JavaPreprocessor pre = build(forest);
  const ImportTable* table = pre.import_table_for("app/Main.java");
  ASSERT_NE(table, nullptr);
  EXPECT_EQ(table->own_package, "app");
  EXPECT_EQ(table->explicit_imports.at("X"), "p.X");
  EXPECT_EQ(table->wildcard_packages, (std::vector<std::string>{"q", "r"}));
}

TEST(ImportTable, NoImports) {
  Forest forest = parse_fixture("basic_call");
  JavaPreprocessor pre = build(forest);
  const ImportTable* table = pre.import_table_for("Example.java");
  ASSERT_NE(table, nullptr);
  EXPECT_EQ(table->own_package, "");
  EXPECT_TRUE(table->explicit_imports.empty());
  EXPECT_TRUE(table->wildcard_packages.empty());
}

TEST(ResolveAlias, ExplicitImportShadowsSamePackage) {
  Forest forest = parse_fixture("imports");
  JavaPreprocessor pre = build(forest);
  const ImportTable& table = *pre.import_table_for("app/Main.java");
  // app also declares its own X; the explicit import wins
  EXPECT_EQ(resolve_alias("X", table, pre.package_importables()),
            (std::vector<std::string>{"p.X"}));
}

TEST(ResolveAlias, TwoWildcardsInDeclarationOrder) {
  Forest forest = parse_fixture("imports");
  JavaPreprocessor pre = build(forest);
  const ImportTable& table = *pre.import_table_for("app/Main.java");
  EXPECT_EQ(resolve_alias("Util", table, pre.package_importables()),
            (std::vector<std::string>{"q.Util", "r.Util"}));
}

TEST(ResolveAlias, LibraryTypeResolvesEmpty) {
  Forest forest = parse_fixture("overload_ambiguity");
  JavaPreprocessor pre = build(forest);
  const ImportTable& table = *pre.import_table_for("Overloads.java");
  EXPECT_EQ(table.wildcard_packages, (std::vector<std::string>{"java.util"}));
  EXPECT_TRUE(resolve_alias("List", table, pre.package_importables()).empty());
}

TEST(Varargs, ArityIsDeclaredParameterCount) {
  Forest forest = parse_fixture("varargs");
  JavaPreprocessor pre = build(forest);
  ASSERT_EQ(pre.varargs_methods().size(), 1u);
  EXPECT_EQ(canonical_id(*pre.varargs_methods().begin()), "Var#sum/1");
  EXPECT_EQ(pre.lookup_name_arity("sum", 0).size(), 1u);
  EXPECT_EQ(pre.lookup_name_arity("sum", 1).size(), 1u);
  EXPECT_EQ(pre.lookup_name_arity("sum", 3).size(), 1u);
}

TEST(Preprocess, PerFileMergeEqualsWholeForest) {
  for (const char* name : {"basic_call", "imports", "class_levels", "nested_types"}) {
    Forest forest = parse_fixture(name);
    JavaPreprocessor whole;
    whole.build(forest);

    std::vector<FileExtract> extracts = JavaPreprocessor::extract(forest);
    std::mt19937 rng(3);
    std::shuffle(extracts.begin(), extracts.end(), rng);
    JavaPreprocessor merged;
    merged.finalize(std::move(extracts));

    EXPECT_EQ(dict_ids(merged), dict_ids(whole)) << name;
    EXPECT_EQ(merged.unique_dict(), whole.unique_dict()) << name;
    EXPECT_EQ(merged.package_importables(), whole.package_importables()) << name;
    std::vector<std::string> a, b;
    for (const auto& [q, r] : merged.class_cache()) a.push_back(q);
    for (const auto& [q, r] : whole.class_cache()) b.push_back(q);
    EXPECT_EQ(a, b) << name;
    for (const auto& [q, record] : whole.class_cache()) {
      EXPECT_EQ(merged.class_cache().at(q).subclasses, record.subclasses);
      EXPECT_EQ(merged.class_cache().at(q).fields, record.fields);
      EXPECT_EQ(merged.class_cache().at(q).supertype_aliases, record.supertype_aliases);
    }
  }
}

TEST(Preprocess, RebuildIsDeterministic) {
  Forest forest = parse_fixture("imports");
  JavaPreprocessor a = build(forest);
  JavaPreprocessor b = build(forest);
  EXPECT_EQ(a.unique_dict(), b.unique_dict());
  EXPECT_EQ(a.package_importables(), b.package_importables());
  EXPECT_EQ(dict_ids(a), dict_ids(b));
}

TEST(Preprocess, AnonymousClassesAreContainersNotTargets) {
  Forest forest = parse_buffers(
      {{"Anon.java",
        "class Owner {\n"
        "    Runnable r = new Runnable() {\n"
        "        public void run() { helper(); }\n"
        "    };\n"
        "    void helper() {}\n"
        "}\n"}},
      "java");
  JavaPreprocessor pre = build(forest);
  std::vector<std::string> ids = dict_ids(pre);
  ASSERT_EQ(ids.size(), 2u);
  EXPECT_EQ(ids[0], "Owner#helper/0");
  EXPECT_EQ(ids[1], "Owner.anon$1#run/0");
  // the anonymous method is a container but never a resolution target
  EXPECT_TRUE(pre.unique_dict().find(NonUniqueKey::name_arity("run", 0)) ==
              pre.unique_dict().end());
  EXPECT_TRUE(pre.class_nodes().count("Owner.anon$1"));
  EXPECT_FALSE(pre.class_cache().count("Owner.anon$1"));
}

}  // namespace
}  // namespace acer::java

namespace acer::java {
namespace {

TEST(Preprocess, EnumConstantsAndMethods) {
  Forest forest = parse_buffers(
      {{"Mode.java",
        "enum Mode {\n"
        "    FAST,\n"
        "    SLOW {\n"
        "        void tune() { adjust(); }\n"
        "    };\n"
        "    void adjust() {}\n"
        "    static Mode pick() { return FAST; }\n"
        "}\n"}},
      "java");
  JavaPreprocessor pre;
  pre.build(forest);

  std::vector<std::string> ids;
  for (const auto& [key, body] : pre.method_dict()) ids.push_back(canonical_id(key));
  EXPECT_EQ(ids, (std::vector<std::string>{"Mode#adjust/0", "Mode#pick/0",
                                           "Mode.anon$1#tune/0"}));
  // enum methods resolve normally; constant-body methods never do
  EXPECT_TRUE(pre.unique_dict().count(NonUniqueKey::name_arity("adjust", 0)));
  EXPECT_FALSE(pre.unique_dict().count(NonUniqueKey::name_arity("tune", 0)));
  EXPECT_EQ(pre.class_cache().at("Mode").kind, ClassRecord::Kind::enum_type);
}

TEST(Preprocess, LocalClassesAreCachedButNotExported) {
  Forest forest = parse_buffers(
      {{"L.java",
        "package p;\n"
        "class Host {\n"
        "    void run() {\n"
        "        class Local { void spin() {} }\n"
        "    }\n"
        "}\n"}},
      "java");
  JavaPreprocessor pre;
  pre.build(forest);
  EXPECT_TRUE(pre.class_cache().count("p.Host.Local"));
  EXPECT_FALSE(pre.package_importables().at("p").count("Host.Local"));
  EXPECT_TRUE(pre.package_importables().at("p").count("Host"));
}

}  // namespace
}  // namespace acer::java
