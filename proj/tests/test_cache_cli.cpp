#include "acer/cache.hpp"

#include "acer/framework.hpp"
#include "acer/java/resolve.hpp"
#include "acer/outputs.hpp"
#include "support/corpus_gen.hpp"
#include "support/paths.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace acer::java {
namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

int run_cli(const std::string& args, const std::filesystem::path& out_file,
            const std::filesystem::path& err_file) {
  std::string cmd = std::string(ACER_CLI_PATH) + " " + args + " >" + out_file.string() + " 2>" +
                    err_file.string();
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

CallGraph generate_with(const JavaPreprocessor& pre, const std::string& algo,
                        const EntryPointFilter& filter) {
  ResolutionConfig config;
  std::unique_ptr<Generator> gen;
  if (algo == "nr")
    gen = std::make_unique<JavaNrGenerator>(pre, config);
  else
    gen = std::make_unique<JavaSchaGenerator>(pre, config);
  return generate(pre.method_dict(), *gen, select_entry_points(pre.method_dict(), filter));
}

TEST(Cache, RoundTripPreservesProductsAndGraph) {
  Forest forest = parse_sources(test::fixture_dir("class_levels"), "java");
  JavaPreprocessor pre;
  pre.build(forest);
  std::string cache = save_cache(forest, pre);

  LoadedCache loaded = load_cache(cache);
  EXPECT_EQ(loaded.pre.unique_dict(), pre.unique_dict());
  EXPECT_EQ(loaded.pre.package_importables(), pre.package_importables());
  ASSERT_EQ(loaded.pre.method_dict().size(), pre.method_dict().size());
  for (const auto& [key, body] : pre.method_dict()) {
    auto it = loaded.pre.method_dict().find(key);
    ASSERT_NE(it, loaded.pre.method_dict().end()) << canonical_id(key);
    EXPECT_EQ(it->second.span(), body.span());
    EXPECT_EQ(it->second.kind(), body.kind());
  }

  std::string direct = emit_json(generate_with(pre, "nr", EntryPointFilter::all()));
  std::string via_cache = emit_json(generate_with(loaded.pre, "nr", EntryPointFilter::all()));
  EXPECT_EQ(direct, via_cache);

  // saving again from the restored products is byte-identical
  EXPECT_EQ(save_cache(loaded.forest, loaded.pre), cache);
}

TEST(Cache, VersionMismatchIsDetected) {
  Forest forest = parse_sources(test::fixture_dir("basic_call"), "java");
  JavaPreprocessor pre;
  pre.build(forest);
  std::string cache = save_cache(forest, pre);
  std::string tampered = cache;
  size_t pos = tampered.find("acer-cache/1");
  ASSERT_NE(pos, std::string::npos);
  tampered.replace(pos, 12, "acer-cache/9");
  try {
    load_cache(tampered);
    FAIL() << "expected CacheError";
  } catch (const CacheError& e) {
    EXPECT_TRUE(e.version_mismatch());
  }
}

TEST(Cache, GarbageIsRejectedWithoutVersionFlag) {
  try {
    load_cache("{\"x\": 1}");
    FAIL() << "expected CacheError";
  } catch (const CacheError& e) {
    EXPECT_FALSE(e.version_mismatch());
  }
}

TEST(Cli, PreprocessThenGenerateMatchesFusedRun) {
  auto dir = test::make_temp_dir("cli-split");
  auto cache = dir / "cache.json";
  auto split_out = dir / "split.json";
  auto fused_out = dir / "fused.json";
  auto err = dir / "err.txt";
  std::string src = test::fixture_dir("inheritance_dispatch").string();

  ASSERT_EQ(run_cli("preprocess --src " + src + " --out " + cache.string(), dir / "pp.out", err),
            0);
  std::string timing = slurp(err);
  EXPECT_NE(timing.find("preprocess "), std::string::npos);

  ASSERT_EQ(run_cli("generate --cache " + cache.string() +
                        " --algo scha --entry name=foo --format json --out " +
                        split_out.string(),
                    dir / "gen.out", err),
            0);
  EXPECT_NE(slurp(err).find("generate "), std::string::npos);

  ASSERT_EQ(run_cli("generate --src " + src +
                        " --algo scha --entry name=foo --format json --out " +
                        fused_out.string(),
                    dir / "gen2.out", err),
            0);

  EXPECT_EQ(slurp(split_out), slurp(fused_out));
  LoadedGraph g = parse_graph_json(slurp(split_out));
  EXPECT_EQ(g.edges.size(), 3u);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodesAreStable) {
  auto dir = test::make_temp_dir("cli-exit");
  auto err = dir / "err.txt";

  // empty forest -> 3
  EXPECT_EQ(run_cli("preprocess --src " + test::fixture_dir("empty_dir").string() + " --out " +
                        (dir / "c.json").string(),
                    dir / "o.txt", err),
            3);
  // unreadable source root -> 2
  EXPECT_EQ(run_cli("preprocess --src /no/such/dir --out " + (dir / "c.json").string(),
                    dir / "o.txt", err),
            2);
  // cache version mismatch -> 4
  std::ofstream(dir / "bad_cache.json") << "{\"schema_version\": \"acer-cache/9\"}";
  EXPECT_EQ(run_cli("generate --cache " + (dir / "bad_cache.json").string() + " --algo nr",
                    dir / "o.txt", err),
            4);
  // schema mismatch on compare -> 5
  std::ofstream(dir / "bad_graph.json") << "{\"schema_version\": \"acer-graph/9\"}";
  EXPECT_EQ(run_cli("compare " + (dir / "bad_graph.json").string() + " " +
                        (dir / "bad_graph.json").string(),
                    dir / "o.txt", err),
            5);
  std::filesystem::remove_all(dir);
}

TEST(Cli, NoEntryPointsWarnsAndSucceeds) {
  auto dir = test::make_temp_dir("cli-noentry");
  auto err = dir / "err.txt";
  ASSERT_EQ(run_cli("generate --src " + test::fixture_dir("basic_call").string() +
                        " --algo nr --entry name=main --format json --out " +
                        (dir / "g.json").string(),
                    dir / "o.txt", err),
            0);
  EXPECT_NE(slurp(err).find("no entry points"), std::string::npos);
  LoadedGraph g = parse_graph_json(slurp(dir / "g.json"));
  EXPECT_TRUE(g.edges.empty());
  std::filesystem::remove_all(dir);
}

TEST(Cli, CompareSameFileTwiceIsFullOverlap) {
  auto dir = test::make_temp_dir("cli-compare");
  auto err = dir / "err.txt";
  auto graph = dir / "g.json";
  ASSERT_EQ(run_cli("generate --src " + test::fixture_dir("basic_call").string() +
                        " --algo nr --entry all --format json --out " + graph.string(),
                    dir / "o.txt", err),
            0);
  auto table = dir / "table.txt";
  ASSERT_EQ(run_cli("compare " + graph.string() + " " + graph.string() + " --names A,B",
                    table, err),
            0);
  std::string text = slurp(table);
  EXPECT_NE(text.find("100.0%"), std::string::npos);
  EXPECT_NE(text.find("A"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, CensusPrintsCountsAndShares) {
  auto dir = test::make_temp_dir("cli-census");
  auto out = dir / "census.txt";
  ASSERT_EQ(run_cli("census --src " + test::fixture_dir("receiver_census").string(), out,
                    dir / "err.txt"),
            0);
  std::string text = slurp(out);
  EXPECT_NE(text.find("identifier"), std::string::npos);
  EXPECT_NE(text.find("7"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ParseErrorsGoToStderr) {
  auto dir = test::make_temp_dir("cli-parse-errors");
  auto err = dir / "err.txt";
  ASSERT_EQ(run_cli("generate --src " + test::fixture_dir("syntax_error").string() +
                        " --algo nr --entry all --format json --out " + (dir / "g.json").string(),
                    dir / "o.txt", err),
            0);
  EXPECT_NE(slurp(err).find("PARSE-ERROR Bad.java "), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, DotAndCsvFormats) {
  auto dir = test::make_temp_dir("cli-formats");
  auto err = dir / "err.txt";
  auto dot = dir / "g.dot";
  ASSERT_EQ(run_cli("generate --src " + test::fixture_dir("inheritance_dispatch").string() +
                        " --algo scha --entry name=foo --format dot --out " + dot.string() +
                        " --collapse-inherited",
                    dir / "o.txt", err),
            0);
  std::string text = slurp(dot);
  EXPECT_EQ(text.rfind("digraph acer {", 0), 0u);
  EXPECT_NE(text.find("\"Bar#foo/1\" -> \"A#method/0\";"), std::string::npos);

  auto csv = dir / "g.csv";
  ASSERT_EQ(run_cli("generate --src " + test::fixture_dir("basic_call").string() +
                        " --algo nr --entry all --format csv --out " + csv.string(),
                    dir / "o.txt", err),
            0);
  EXPECT_EQ(slurp(csv).rfind("src,dst,defined_in,file,row,col\n", 0), 0u);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace acer::java
