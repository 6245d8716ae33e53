#include "support/corpus_gen.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unistd.h>
#include <vector>

namespace acer::test {
namespace {

struct MethodModel {
  std::string name;
  int arity = 0;
  bool is_static = false;
  bool varargs = false;
  std::string param_types;  // rendered parameter list
};

struct ClassModel {
  int index = 0;
  std::string package;
  std::string name;
  bool is_interface = false;
  int parent = -1;  // index into classes, same package
  std::string iface;
  std::vector<MethodModel> methods;
  std::vector<std::pair<std::string, int>> fields;  // (name, type class index)
  bool has_noarg_ctor = false;
  bool has_int_ctor = false;
  bool has_static_init = false;
  bool has_nested = false;
  bool methodless = false;
  int depth = 0;
};

std::string args_for(const MethodModel& m, std::mt19937& rng) {
  int count = m.arity;
  if (m.varargs) {
    int roll = static_cast<int>(rng() % 3);
    count = m.arity - 1 + roll;  // exercise empty, exact, and extra varargs
  }
  std::string out;
  for (int i = 0; i < count; ++i) {
    if (i) out += ", ";
    out += std::to_string(i + 1);
  }
  return out;
}

const MethodModel* pick_callable(const ClassModel& cls, std::mt19937& rng, bool want_static) {
  std::vector<const MethodModel*> pool;
  for (const MethodModel& m : cls.methods)
    if (m.is_static == want_static) pool.push_back(&m);
  if (pool.empty()) return nullptr;
  return pool[rng() % pool.size()];
}

}  // namespace

CorpusStats generate_corpus(const std::filesystem::path& dir, const CorpusOptions& options) {
  std::mt19937 rng(options.seed);
  std::vector<ClassModel> classes(options.classes);
  int method_counter = 0;

  const char* common_names[] = {"run", "init", "step", "helper"};
  const char* common_aliases[] = {"Common", "Node", "Task"};

  // Pass 1: shape every class so call sites can reference real targets.
  for (int i = 0; i < options.classes; ++i) {
    ClassModel& cls = classes[i];
    cls.index = i;
    cls.package = "pkg" + std::to_string(i % options.packages);
    cls.is_interface = i % 11 == 3;
    cls.methodless = !cls.is_interface && i % 47 == 11;
    cls.name = i % 17 == 5 ? std::string(common_aliases[(i / 17) % 3]) + "X"
                           : "C" + std::to_string(i);

    // inheritance chains within the package, depth capped at 4
    if (!cls.is_interface && i >= options.packages && rng() % 2 == 0) {
      for (int back = i - options.packages; back >= 0; back -= options.packages) {
        const ClassModel& candidate = classes[back];
        if (candidate.package == cls.package && !candidate.is_interface &&
            !candidate.methodless && candidate.depth < 4) {
          cls.parent = back;
          cls.depth = candidate.depth + 1;
          break;
        }
        if (rng() % 3 == 0) break;
      }
    }
    if (!cls.is_interface && cls.parent < 0 && i > 3 && i % 9 == 4) {
      for (int back = i - 1; back >= 0; --back) {
        if (classes[back].is_interface && classes[back].package == cls.package) {
          cls.iface = classes[back].name;
          break;
        }
      }
    }

    if (cls.methodless) {
      cls.fields.emplace_back("dep", static_cast<int>(rng() % (i + 1)));
      continue;
    }

    int method_count = 2 + static_cast<int>(rng() % 3);
    for (int k = 0; k < method_count; ++k) {
      MethodModel m;
      bool common = rng() % 4 == 0;
      m.name = common ? common_names[rng() % 4] : "m" + std::to_string(method_counter++);
      m.arity = static_cast<int>(rng() % 3);
      m.is_static = k == method_count - 1 && !cls.is_interface;
      if (!common && rng() % 20 == 0) {
        m.varargs = true;
        m.arity = std::max(1, m.arity);
      }
      std::string params;
      for (int a = 0; a < m.arity; ++a) {
        if (a) params += ", ";
        if (m.varargs && a == m.arity - 1) {
          params += "int... p" + std::to_string(a);
        } else {
          params += (a % 2 == 0 ? "int p" : "float p") + std::to_string(a);
        }
      }
      m.param_types = params;
      cls.methods.push_back(m);

      // same-arity overload pair, distinguished only by parameter types
      if (!cls.is_interface && !m.varargs && m.arity >= 1 && rng() % 14 == 0) {
        MethodModel twin = m;
        std::string twin_params;
        for (int a = 0; a < m.arity; ++a) {
          if (a) twin_params += ", ";
          twin_params += "float q" + std::to_string(a);
        }
        twin.param_types = twin_params;
        twin.is_static = false;
        cls.methods.push_back(twin);
      }
    }
    if (!cls.is_interface) {
      cls.has_noarg_ctor = rng() % 5 < 2;
      cls.has_int_ctor = rng() % 5 == 0;
      cls.has_static_init = rng() % 10 == 0;
      cls.has_nested = i % 10 == 7;
      int field_count = static_cast<int>(rng() % 3);
      for (int f = 0; f < field_count; ++f)
        cls.fields.emplace_back("f" + std::to_string(f), static_cast<int>(rng() % classes.size()));
    }
  }

  // Pass 2: emit files.
  CorpusStats stats;
  for (ClassModel& cls : classes) {
    std::ostringstream out;
    out << "package " << cls.package << ";\n\n";
    for (int p = 0; p < options.packages; ++p) {
      std::string pkg = "pkg" + std::to_string(p);
      if (pkg != cls.package) out << "import " << pkg << ".*;\n";
    }
    out << "\n";

    if (cls.is_interface) {
      out << "public interface " << cls.name << " {\n";
      for (const MethodModel& m : cls.methods)
        out << "    void " << m.name << "(" << m.param_types << ");\n";
      out << "}\n";
    } else {
      out << "public class " << cls.name;
      if (cls.parent >= 0) out << " extends " << classes[cls.parent].name;
      if (!cls.iface.empty()) out << " implements " << cls.iface;
      out << " {\n";

      for (auto& [field, type_idx] : cls.fields) {
        const ClassModel& ft = classes[type_idx];
        out << "    " << ft.name << " " << field;
        if (ft.has_noarg_ctor && !ft.is_interface) out << " = new " << ft.name << "()";
        out << ";\n";
      }
      if (cls.has_static_init) {
        const ClassModel& target = classes[rng() % classes.size()];
        const MethodModel* callee = pick_callable(target, rng, true);
        out << "    static {\n";
        if (callee)
          out << "        " << target.name << "." << callee->name << "("
              << args_for(*callee, rng) << ");\n";
        out << "    }\n";
      }
      if (cls.has_noarg_ctor) out << "    public " << cls.name << "() {}\n";
      if (cls.has_int_ctor) out << "    public " << cls.name << "(int seed) {}\n";
      if (cls.has_nested) {
        out << "    static class Inner {\n        void tick() {}\n    }\n";
      }

      for (size_t mi = 0; mi < cls.methods.size(); ++mi) {
        const MethodModel& m = cls.methods[mi];
        // interface methods picked up via implements get bodies here
        out << "    public " << (m.is_static ? "static " : "") << "void " << m.name << "("
            << m.param_types << ") {\n";
        for (int filler = 0; filler < options.filler_statements; ++filler)
          out << "        int local" << filler << " = " << filler << " + 1;\n";

        int sites = 1 + static_cast<int>(rng() % 3);
        for (int s = 0; s < sites; ++s) {
          const ClassModel& target = classes[rng() % classes.size()];
          int pattern = static_cast<int>(rng() % 8);
          const MethodModel* callee = pick_callable(target, rng, false);
          switch (pattern) {
            case 0:  // local receiver: always SCHA-friendly
              if (callee && !target.is_interface && target.has_noarg_ctor) {
                std::string var = "v" + std::to_string(s);
                out << "        " << target.name << " " << var << " = new " << target.name
                    << "();\n";
                out << "        " << var << "." << callee->name << "(" << args_for(*callee, rng)
                    << ");\n";
              }
              break;
            case 1:  // own-field receiver
              if (!cls.fields.empty()) {
                const auto& [field, type_idx] = cls.fields[rng() % cls.fields.size()];
                const MethodModel* fm = pick_callable(classes[type_idx], rng, false);
                if (fm)
                  out << "        " << field << "." << fm->name << "(" << args_for(*fm, rng)
                      << ");\n";
              }
              break;
            case 2: {  // implicit this
              const MethodModel* own = pick_callable(cls, rng, false);
              if (own && own->name != m.name)
                out << "        " << own->name << "(" << args_for(*own, rng) << ");\n";
              break;
            }
            case 3: {  // explicit this
              const MethodModel* own = pick_callable(cls, rng, false);
              if (own && own->name != m.name)
                out << "        this." << own->name << "(" << args_for(*own, rng) << ");\n";
              break;
            }
            case 4: {  // static via class-name receiver
              const MethodModel* st = pick_callable(target, rng, true);
              if (st)
                out << "        " << target.name << "." << st->name << "(" << args_for(*st, rng)
                    << ");\n";
              break;
            }
            case 5:  // complex receivers: chained call and field chain
              if (!cls.fields.empty() && callee) {
                const auto& [field, type_idx] = cls.fields[0];
                out << "        " << field << ".toString().hashCode();\n";
              }
              break;
            case 6:  // bare construction
              if (!target.is_interface && target.has_int_ctor)
                out << "        new " << target.name << "(7);\n";
              break;
            default: {  // parameter receiver on int params is useless; reuse local pattern
              if (callee && !target.is_interface && target.has_noarg_ctor) {
                std::string var = "w" + std::to_string(s);
                out << "        " << target.name << " " << var << " = new " << target.name
                    << "();\n";
                out << "        " << var << "." << callee->name << "(" << args_for(*callee, rng)
                    << ");\n";
              }
              break;
            }
          }
        }
        out << "    }\n";
        ++stats.methods;
      }
      out << "}\n";
    }

    std::filesystem::path pkg_dir = dir / cls.package;
    std::filesystem::create_directories(pkg_dir);
    std::ofstream file(pkg_dir / ("F" + std::to_string(cls.index) + ".java"),
                       std::ios::binary);
    file << out.str();
    ++stats.files;
  }
  return stats;
}

std::filesystem::path make_temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  std::filesystem::path dir = std::filesystem::temp_directory_path() /
                              ("acer-" + tag + "-" + std::to_string(::getpid()) + "-" +
                               std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace acer::test
