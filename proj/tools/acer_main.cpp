// acer: AST-based application-only call graph generation for Java sources.
//
// Subcommands: preprocess (build + save the lookup-structure cache),
// generate (produce a call graph with the nr or scha resolver), compare
// (pairwise edge overlap of saved graphs), census (receiver-kind counts).
//
// Exit codes: 0 ok, 2 I/O failure, 3 empty forest, 4 cache version
// mismatch, 5 graph schema mismatch on compare.

#include "acer/cache.hpp"
#include "acer/framework.hpp"
#include "acer/java/preprocess.hpp"
#include "acer/java/resolve.hpp"
#include "acer/model.hpp"
#include "acer/outputs.hpp"
#include "acer/syntax.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using acer::java::JavaPreprocessor;
using nlohmann::ordered_json;

constexpr int kExitIo = 2;
constexpr int kExitEmptyForest = 3;
constexpr int kExitCacheVersion = 4;
constexpr int kExitSchemaMismatch = 5;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void print_timing(const char* phase, double seconds) {
  std::fprintf(stderr, "%s %.3f\n", phase, seconds);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw acer::IoError("cannot write " + path);
  out << content;
  if (!out) throw acer::IoError("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw acer::IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

struct GenerateOptions {
  std::string cache_path;
  std::string src;
  std::string lang = "java";
  std::string algo;
  std::string entry = "all";
  std::string format = "json";
  std::string out;
  std::vector<std::string> globs;
  bool nr_name_only = false;
  bool no_subtypes = false;
  bool qualify_imports = false;
  bool collapse_inherited = false;
  unsigned threads = 0;
};

ordered_json semantic_config(const GenerateOptions& opt) {
  // Only fields that influence the graph; paths and thread counts stay out
  // so identical corpora produce byte-identical artifacts.
  ordered_json config;
  config["language"] = opt.lang;
  config["algorithm"] = opt.algo;
  config["entry"] = opt.entry;
  config["nr_use_arity"] = !opt.nr_name_only;
  config["scha_expand_subtypes"] = !opt.no_subtypes;
  config["scha_qualify_with_imports"] = opt.qualify_imports;
  config["format"] = opt.format;
  return config;
}

int run_preprocess(const std::string& src, const std::string& lang, const std::string& out,
                   const std::vector<std::string>& globs, unsigned threads) {
  Stopwatch watch;
  acer::Forest forest = acer::parse_sources(src, lang, globs, threads);
  std::fputs(forest.report().format_lines().c_str(), stderr);
  if (forest.size() == 0) {
    std::fprintf(stderr, "error: no sources matched under %s\n", src.c_str());
    return kExitEmptyForest;
  }
  JavaPreprocessor pre;
  pre.build(forest, threads);
  for (const auto& w : pre.warnings())
    std::fprintf(stderr, "warning: %s: %s\n", w.code.c_str(), w.message.c_str());
  write_output(out, acer::java::save_cache(forest, pre));
  print_timing("preprocess", watch.seconds());
  return 0;
}

int run_generate(const GenerateOptions& opt) {
  std::optional<acer::java::LoadedCache> loaded;
  acer::Forest forest;
  JavaPreprocessor built;
  const JavaPreprocessor* pre = nullptr;

  if (!opt.cache_path.empty()) {
    loaded = acer::java::load_cache(read_file(opt.cache_path), opt.threads);
    pre = &loaded->pre;
  } else {
    Stopwatch watch;
    forest = acer::parse_sources(opt.src, opt.lang, opt.globs, opt.threads);
    std::fputs(forest.report().format_lines().c_str(), stderr);
    built.build(forest, opt.threads);
    print_timing("preprocess", watch.seconds());
    pre = &built;
  }

  acer::java::ResolutionConfig config;
  config.nr_use_arity = !opt.nr_name_only;
  config.scha_expand_subtypes = !opt.no_subtypes;
  config.scha_qualify_with_imports = opt.qualify_imports;

  std::unique_ptr<acer::Generator> generator;
  if (opt.algo == "nr") {
    generator = std::make_unique<acer::java::JavaNrGenerator>(*pre, config);
  } else {
    generator = std::make_unique<acer::java::JavaSchaGenerator>(*pre, config);
  }

  Stopwatch watch;
  acer::EntryPointFilter filter = acer::EntryPointFilter::parse(opt.entry);
  std::vector<acer::MethodKey> entries = acer::select_entry_points(pre->method_dict(), filter);
  if (entries.empty())
    std::fprintf(stderr, "warning: no entry points matched '%s'\n", opt.entry.c_str());
  acer::CallGraph graph = acer::generate(pre->method_dict(), *generator, entries);
  print_timing("generate", watch.seconds());

  std::string artifact;
  if (opt.format == "dot") {
    artifact = acer::emit_dot(graph, opt.collapse_inherited ? acer::DotMode::collapse_inherited
                                                            : acer::DotMode::keep_dispatch);
  } else if (opt.format == "csv") {
    artifact = acer::emit_csv(graph);
  } else {
    artifact = acer::emit_json(graph, semantic_config(opt));
  }
  write_output(opt.out, artifact);
  return 0;
}

int run_compare(const std::vector<std::string>& paths, const std::string& names_csv) {
  std::vector<std::string> names;
  if (!names_csv.empty()) {
    std::istringstream in(names_csv);
    std::string part;
    while (std::getline(in, part, ',')) names.push_back(part);
  }
  if (!names.empty() && names.size() != paths.size())
    throw CLI::ValidationError("--names must list one name per graph file");

  std::vector<std::pair<std::string, acer::ProjectedEdges>> sets;
  for (size_t i = 0; i < paths.size(); ++i) {
    acer::LoadedGraph graph = acer::parse_graph_json(read_file(paths[i]));
    std::string name =
        i < names.size() ? names[i] : std::filesystem::path(paths[i]).stem().string();
    sets.emplace_back(std::move(name), acer::project_edges(graph));
  }
  std::cout << acer::format_overlap(acer::overlap(sets));
  return 0;
}

int run_census(const std::string& src, const std::string& lang,
               const std::vector<std::string>& globs) {
  acer::Forest forest = acer::parse_sources(src, lang, globs, 0);
  std::fputs(forest.report().format_lines().c_str(), stderr);
  std::cout << acer::format_census(acer::census(forest));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AST-based application-only call graph generator"};
  app.require_subcommand(1);

  std::string pp_src, pp_lang = "java", pp_out;
  std::vector<std::string> pp_globs;
  unsigned pp_threads = 0;
  CLI::App* preprocess = app.add_subcommand("preprocess", "build and save lookup structures");
  preprocess->add_option("--src", pp_src, "source root directory")->required();
  preprocess->add_option("--lang", pp_lang, "language tag");
  preprocess->add_option("--out", pp_out, "cache file path")->required();
  preprocess->add_option("--include", pp_globs, "include glob (repeatable)");
  preprocess->add_option("--threads", pp_threads, "worker threads (0 = auto)");

  GenerateOptions gen;
  CLI::App* generate = app.add_subcommand("generate", "generate a call graph");
  auto* cache_opt = generate->add_option("--cache", gen.cache_path, "preprocess cache file");
  auto* src_opt = generate->add_option("--src", gen.src, "source root (implicit preprocess)");
  cache_opt->excludes(src_opt);
  generate->add_option("--lang", gen.lang, "language tag");
  generate->add_option("--algo", gen.algo, "resolver")
      ->required()
      ->check(CLI::IsMember({"nr", "scha"}));
  generate->add_option("--entry", gen.entry, "entry filter: all | name=<s> | regex=<re>");
  generate->add_option("--format", gen.format, "output format")
      ->check(CLI::IsMember({"dot", "json", "csv"}));
  generate->add_option("--out", gen.out, "output file (default stdout)");
  generate->add_option("--include", gen.globs, "include glob (repeatable)");
  generate->add_flag("--nr-name-only", gen.nr_name_only, "NR matches by name, ignoring arity");
  generate->add_flag("--no-subtypes", gen.no_subtypes, "SCHA without subtype expansion");
  generate->add_flag("--scha-qualify-imports", gen.qualify_imports,
                     "restrict SCHA alias matches via imports");
  generate->add_flag("--collapse-inherited", gen.collapse_inherited,
                     "DOT: rewrite inherited targets to the defining method");
  generate->add_option("--threads", gen.threads, "worker threads (0 = auto)");

  std::vector<std::string> cmp_paths;
  std::string cmp_names;
  CLI::App* compare = app.add_subcommand("compare", "edge-overlap matrix of saved graphs");
  compare->add_option("graphs", cmp_paths, "graph JSON files")->expected(2, -1)->required();
  compare->add_option("--names", cmp_names, "comma-separated row/column labels");

  std::string census_src, census_lang = "java";
  std::vector<std::string> census_globs;
  CLI::App* census_cmd = app.add_subcommand("census", "receiver-kind counts");
  census_cmd->add_option("--src", census_src, "source root directory")->required();
  census_cmd->add_option("--lang", census_lang, "language tag");
  census_cmd->add_option("--include", census_globs, "include glob (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (preprocess->parsed())
      return run_preprocess(pp_src, pp_lang, pp_out, pp_globs, pp_threads);
    if (generate->parsed()) {
      if (gen.cache_path.empty() && gen.src.empty()) {
        std::fprintf(stderr, "error: generate needs --cache or --src\n");
        return 1;
      }
      return run_generate(gen);
    }
    if (compare->parsed()) return run_compare(cmp_paths, cmp_names);
    if (census_cmd->parsed()) return run_census(census_src, census_lang, census_globs);
  } catch (const acer::java::CacheError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.version_mismatch() ? kExitCacheVersion : kExitIo;
  } catch (const acer::SchemaError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSchemaMismatch;
  } catch (const acer::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
