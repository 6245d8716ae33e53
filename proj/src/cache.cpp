#include "acer/cache.hpp"

#include "java_common.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace acer::java {
namespace {

using nlohmann::ordered_json;

constexpr char kB64Chars[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string b64_encode(std::string_view data) {
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  size_t i = 0;
  while (i + 3 <= data.size()) {
    uint32_t v = (uint8_t(data[i]) << 16) | (uint8_t(data[i + 1]) << 8) | uint8_t(data[i + 2]);
    out += kB64Chars[(v >> 18) & 63];
    out += kB64Chars[(v >> 12) & 63];
    out += kB64Chars[(v >> 6) & 63];
    out += kB64Chars[v & 63];
    i += 3;
  }
  if (i + 1 == data.size()) {
    uint32_t v = uint8_t(data[i]) << 16;
    out += kB64Chars[(v >> 18) & 63];
    out += kB64Chars[(v >> 12) & 63];
    out += "==";
  } else if (i + 2 == data.size()) {
    uint32_t v = (uint8_t(data[i]) << 16) | (uint8_t(data[i + 1]) << 8);
    out += kB64Chars[(v >> 18) & 63];
    out += kB64Chars[(v >> 12) & 63];
    out += kB64Chars[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

std::string b64_decode(std::string_view text) {
  auto value_of = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::string out;
  uint32_t buf = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=') break;
    int v = value_of(c);
    if (v < 0) throw CacheError("cache contains invalid base64", false);
    buf = (buf << 6) | uint32_t(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out += char((buf >> bits) & 0xff);
    }
  }
  return out;
}

ordered_json key_to_json(const MethodKey& key) {
  ordered_json j;
  j["package"] = key.owner.package;
  j["class_path"] = key.owner.class_path;
  j["name"] = key.name;
  j["arity"] = key.arity;
  if (key.param_type_aliases)
    j["param_type_aliases"] = *key.param_type_aliases;
  else
    j["param_type_aliases"] = nullptr;
  return j;
}

MethodKey key_from_json(const ordered_json& j) {
  MethodKey key;
  key.owner.package = j.at("package").get<std::string>();
  key.owner.class_path = j.at("class_path").get<std::vector<std::string>>();
  key.name = j.at("name").get<std::string>();
  key.arity = j.at("arity").get<int>();
  if (!j.at("param_type_aliases").is_null())
    key.param_type_aliases = j.at("param_type_aliases").get<std::vector<std::string>>();
  return key;
}

ordered_json node_ref(SyntaxNode node) {
  if (node.is_null()) return nullptr;
  ordered_json j;
  j["file"] = node.file().path;
  j["start"] = node.start_byte();
  j["end"] = node.end_byte();
  j["kind"] = std::string(node.kind());
  return j;
}

// Exact (span, kind) descent from the file root. The cached trees and the
// re-parsed trees come from identical bytes, so the node must exist.
SyntaxNode bind_node(const Forest& forest, const std::map<std::string, size_t>& file_index,
                     const ordered_json& ref) {
  if (ref.is_null()) return {};
  auto it = file_index.find(ref.at("file").get<std::string>());
  if (it == file_index.end()) throw CacheError("cache references an unknown file", false);
  uint32_t start = ref.at("start").get<uint32_t>();
  uint32_t end = ref.at("end").get<uint32_t>();
  std::string kind = ref.at("kind").get<std::string>();

  SyntaxNode node = forest.root(it->second);
  while (!node.is_null()) {
    if (node.start_byte() == start && node.end_byte() == end && node.kind() == kind) return node;
    SyntaxNode next;
    for (uint32_t i = 0; i < node.child_count(); ++i) {
      SyntaxNode child = node.child(i);
      if (child.start_byte() <= start && end <= child.end_byte()) {
        next = child;
        break;
      }
    }
    if (next.is_null()) break;
    node = next;
  }
  throw CacheError("cache node reference does not match the re-parsed tree", false);
}

}  // namespace

std::string save_cache(const Forest& forest, const JavaPreprocessor& pre) {
  ordered_json doc;
  doc["schema_version"] = kCacheSchemaVersion;
  doc["language"] = "java";
  doc["grammar"] = grammar_version("java");

  ordered_json files = ordered_json::array();
  for (size_t i = 0; i < forest.size(); ++i) {
    ordered_json f;
    f["path"] = forest.file(i).path;
    f["content_b64"] = b64_encode(forest.file(i).content);
    files.push_back(std::move(f));
  }
  doc["files"] = std::move(files);

  ordered_json report = ordered_json::array();
  for (const ParseIssue& issue : forest.report().issues) {
    ordered_json r;
    r["path"] = issue.path;
    r["row"] = issue.row;
    r["col"] = issue.col;
    r["kind"] = issue.kind == ParseIssue::Kind::io_failure ? "io" : "syntax";
    report.push_back(std::move(r));
  }
  doc["parse_report"] = std::move(report);

  ordered_json warnings = ordered_json::array();
  for (const PreprocessWarning& w : pre.warnings()) {
    ordered_json entry;
    entry["code"] = w.code;
    entry["path"] = w.path;
    entry["message"] = w.message;
    warnings.push_back(std::move(entry));
  }
  doc["warnings"] = std::move(warnings);

  ordered_json products;

  ordered_json methods = ordered_json::array();
  for (const auto& [key, body] : pre.method_dict()) {
    ordered_json m;
    m["key"] = key_to_json(key);
    m["body"] = node_ref(body);
    m["varargs"] = pre.varargs_methods().count(key) > 0;
    m["anonymous"] = pre.anonymous_methods().count(key) > 0;
    methods.push_back(std::move(m));
  }
  products["method_dict"] = std::move(methods);

  ordered_json uniques = ordered_json::array();
  for (const auto& [nk, keys] : pre.unique_dict()) {
    ordered_json u;
    u["alias"] = nk.alias ? ordered_json(*nk.alias) : ordered_json(nullptr);
    u["name"] = nk.name;
    u["arity"] = nk.arity;
    ordered_json ks = ordered_json::array();
    for (const MethodKey& k : keys) ks.push_back(key_to_json(k));
    u["keys"] = std::move(ks);
    uniques.push_back(std::move(u));
  }
  products["unique_dict"] = std::move(uniques);

  products["package_importables"] = pre.package_importables();

  ordered_json classes = ordered_json::array();
  for (const auto& [qualified, record] : pre.class_cache()) {
    ordered_json c;
    c["package"] = record.key.package;
    c["class_path"] = record.key.class_path;
    c["kind"] = std::string(to_string(record.kind));
    c["supertype_aliases"] = record.supertype_aliases;
    c["fields"] = record.fields;
    ordered_json sigs = ordered_json::array();
    for (const auto& [name, arity] : record.method_sigs)
      sigs.push_back(ordered_json::array({name, arity}));
    c["method_sigs"] = std::move(sigs);
    c["subclasses"] = record.subclasses;
    c["is_abstract"] = record.is_abstract;
    classes.push_back(std::move(c));
  }
  products["class_cache"] = std::move(classes);

  ordered_json class_nodes = ordered_json::array();
  for (const auto& [qualified, node] : pre.class_nodes()) {
    ordered_json entry;
    entry["qualified"] = qualified;
    entry["node"] = node_ref(node);
    class_nodes.push_back(std::move(entry));
  }
  products["class_nodes"] = std::move(class_nodes);

  ordered_json imports = ordered_json::array();
  for (const auto& [path, table] : pre.import_tables()) {
    ordered_json t;
    t["path"] = path;
    t["own_package"] = table.own_package;
    t["explicit"] = table.explicit_imports;
    t["wildcards"] = table.wildcard_packages;
    imports.push_back(std::move(t));
  }
  products["import_tables"] = std::move(imports);

  doc["products"] = std::move(products);
  return doc.dump(2) + "\n";
}

LoadedCache load_cache(std::string_view json_text, unsigned threads) {
  ordered_json doc = ordered_json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) throw CacheError("cache is not valid JSON", false);
  if (!doc.is_object() || !doc.contains("schema_version"))
    throw CacheError("cache lacks a schema_version", false);
  std::string version = doc["schema_version"].get<std::string>();
  if (version != kCacheSchemaVersion)
    throw CacheError("cache schema " + version + " does not match " +
                         std::string(kCacheSchemaVersion),
                     true);

  try {
    std::vector<std::pair<std::string, std::string>> buffers;
    for (const auto& f : doc.at("files"))
      buffers.emplace_back(f.at("path").get<std::string>(),
                           b64_decode(f.at("content_b64").get<std::string>()));

    LoadedCache loaded;
    loaded.forest = parse_buffers(std::move(buffers), doc.at("language").get<std::string>(),
                                  threads);
    std::map<std::string, size_t> file_index;
    for (size_t i = 0; i < loaded.forest.size(); ++i)
      file_index[loaded.forest.file(i).path] = i;

    const ordered_json& products = doc.at("products");

    std::vector<JavaPreprocessor::FinalizedMethod> methods;
    for (const auto& m : products.at("method_dict")) {
      JavaPreprocessor::FinalizedMethod fm;
      fm.key = key_from_json(m.at("key"));
      fm.varargs = m.at("varargs").get<bool>();
      fm.anonymous = m.at("anonymous").get<bool>();
      fm.body = bind_node(loaded.forest, file_index, m.at("body"));
      methods.push_back(std::move(fm));
    }

    std::map<std::string, ClassRecord> class_cache;
    for (const auto& c : products.at("class_cache")) {
      ClassRecord record;
      record.key.package = c.at("package").get<std::string>();
      record.key.class_path = c.at("class_path").get<std::vector<std::string>>();
      std::string kind = c.at("kind").get<std::string>();
      record.kind = kind == "interface" ? ClassRecord::Kind::interface_type
                    : kind == "enum"    ? ClassRecord::Kind::enum_type
                                        : ClassRecord::Kind::class_type;
      record.supertype_aliases = c.at("supertype_aliases").get<std::vector<std::string>>();
      record.fields = c.at("fields").get<std::map<std::string, std::string>>();
      for (const auto& sig : c.at("method_sigs"))
        record.method_sigs.emplace(sig.at(0).get<std::string>(), sig.at(1).get<int>());
      record.subclasses = c.at("subclasses").get<std::set<std::string>>();
      record.is_abstract = c.at("is_abstract").get<bool>();
      class_cache[record.qualified()] = std::move(record);
    }

    std::map<std::string, SyntaxNode> class_nodes;
    for (const auto& entry : products.at("class_nodes"))
      class_nodes[entry.at("qualified").get<std::string>()] =
          bind_node(loaded.forest, file_index, entry.at("node"));

    std::map<std::string, ImportTable> import_tables;
    for (const auto& t : products.at("import_tables")) {
      ImportTable table;
      table.own_package = t.at("own_package").get<std::string>();
      table.explicit_imports = t.at("explicit").get<std::map<std::string, std::string>>();
      table.wildcard_packages = t.at("wildcards").get<std::vector<std::string>>();
      import_tables[t.at("path").get<std::string>()] = std::move(table);
    }

    PackageImportables importables =
        products.at("package_importables").get<PackageImportables>();

    std::vector<PreprocessWarning> warnings;
    for (const auto& w : doc.at("warnings"))
      warnings.push_back({w.at("code").get<std::string>(), w.at("path").get<std::string>(),
                          w.at("message").get<std::string>()});

    loaded.pre.restore(std::move(methods), std::move(class_cache), std::move(class_nodes),
                       std::move(import_tables), std::move(importables), std::move(warnings));
    return loaded;
  } catch (const ordered_json::exception& e) {
    throw CacheError(std::string("malformed cache: ") + e.what(), false);
  }
}

}  // namespace acer::java
