#include "acer/framework.hpp"

#include <algorithm>
#include <deque>
#include <regex>
#include <stdexcept>

namespace acer {

void Preprocessor::validate_contract() const {
  for (const auto& [key, methods] : unique_dict_) {
    if (methods.empty())
      throw std::logic_error("unique_dict value set is empty for " + key.name + "/" +
                             std::to_string(key.arity));
    for (const MethodKey& m : methods)
      if (method_dict_.find(m) == method_dict_.end())
        throw std::logic_error("unique_dict references a method missing from method_dict: " +
                               canonical_id(m));
  }
}

EntryPointFilter EntryPointFilter::parse(std::string_view spec) {
  if (spec == "all") return all();
  if (spec.rfind("name=", 0) == 0) return name_equals(std::string(spec.substr(5)));
  if (spec.rfind("regex=", 0) == 0) return matching(std::string(spec.substr(6)));
  throw std::invalid_argument("bad entry filter (want all | name=<s> | regex=<re>): " +
                              std::string(spec));
}

std::string EntryPointFilter::spec() const {
  switch (kind) {
    case Kind::all_methods: return "all";
    case Kind::name_equals: return "name=" + arg;
    case Kind::regex: return "regex=" + arg;
  }
  return "all";
}

std::vector<MethodKey> select_entry_points(const MethodDict& method_dict,
                                           const EntryPointFilter& filter) {
  std::vector<MethodKey> out;
  std::optional<std::regex> re;
  if (filter.kind == EntryPointFilter::Kind::regex) re.emplace(filter.arg);

  for (const auto& [key, body] : method_dict) {
    switch (filter.kind) {
      case EntryPointFilter::Kind::all_methods:
        out.push_back(key);
        break;
      case EntryPointFilter::Kind::name_equals:
        if (key.name == filter.arg) out.push_back(key);
        break;
      case EntryPointFilter::Kind::regex:
        if (std::regex_search(canonical_id(key), *re)) out.push_back(key);
        break;
    }
  }
  std::sort(out.begin(), out.end(), [](const MethodKey& a, const MethodKey& b) {
    return canonical_id(a) < canonical_id(b);
  });
  return out;
}

CallGraph generate(const MethodDict& method_dict, const Generator& generator,
                   std::span<const MethodKey> entries) {
  CallGraph graph;
  std::deque<std::pair<Context, CallSite>> deque;
  std::set<std::pair<Context, SiteId>> visited;
  std::set<std::string> seeded_classes;

  auto push_sites = [&](const Context& context, std::vector<CallSite> sites) {
    for (CallSite& site : sites) deque.emplace_back(context, std::move(site));
  };

  for (const MethodKey& entry : entries) {
    auto it = method_dict.find(entry);
    if (it == method_dict.end()) continue;
    ContainerKey container{entry};
    push_sites(Context{}, generator.seek_call_sites(container, it->second));
    if (seeded_classes.insert(canonical_id(entry.owner)).second)
      push_sites(Context{}, generator.class_level_sites(entry));
  }

  while (!deque.empty()) {
    auto [context, site] = std::move(deque.front());
    deque.pop_front();
    if (!visited.insert({context, site.id}).second) continue;

    Resolution resolution;
    try {
      resolution = generator.resolve(context, site);
    } catch (const std::exception& e) {
      throw std::runtime_error("resolver failed at " + site.id.file + ":" +
                               std::to_string(site.id.byte) + " (" + site.callee_name +
                               "): " + e.what());
    }

    if (resolution.targets.empty()) {
      graph.add_unresolved(site, resolution.empty_reason.empty() ? "unresolved"
                                                                 : resolution.empty_reason);
      continue;
    }
    for (const auto& [next_context, target] : resolution.targets) {
      graph.add_edge(site.container, target, site);
      auto body = method_dict.find(target.defined_in);
      if (body == method_dict.end() || body->second.is_null()) continue;
      ContainerKey container{target.defined_in};
      push_sites(next_context, generator.seek_call_sites(container, body->second));
    }
  }
  return graph;
}

}  // namespace acer
