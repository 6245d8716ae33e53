#pragma once

// Deterministic synthetic Java corpus generator for property and
// performance tests. Same options + seed => byte-identical files.

#include <filesystem>
#include <string>

namespace acer::test {

struct CorpusOptions {
  int classes = 200;
  int packages = 6;
  unsigned seed = 1;
  int filler_statements = 0;  // per method, to bulk up LOC for perf runs
};

struct CorpusStats {
  int files = 0;
  int methods = 0;
};

CorpusStats generate_corpus(const std::filesystem::path& dir, const CorpusOptions& options);

// Unique scratch directory under the system temp dir; caller removes it.
std::filesystem::path make_temp_dir(const std::string& tag);

}  // namespace acer::test
