#pragma once

// Brute-force name+arity resolution oracle: scans every invocation node and
// matches it against a flat declaration list, no worklist, no preprocess
// products. Shares only the parse frontend and the documented id scheme
// with the implementation under test.

#include "acer/syntax.hpp"

#include <compare>
#include <set>
#include <string>

namespace acer::test {

struct OracleEdge {
  std::string src;
  std::string defined_in;
  std::string file;
  uint32_t byte = 0;
  auto operator<=>(const OracleEdge&) const = default;
};

// Edge set for entries = all methods.
std::set<OracleEdge> nr_oracle_edges(const Forest& forest);

}  // namespace acer::test
