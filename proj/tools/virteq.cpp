#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "virteq/cli.hpp"

namespace {

const std::map<std::string, std::vector<std::string>>& command_refs() {
  static const std::map<std::string, std::vector<std::string>> refs = {
      {"validate", {}},
      {"comma", {"f", "g"}},
      {"tensor", {"modules"}},
      {"rext", {"k", "f"}},
      {"ran", {"k", "f"}},
      {"lan", {"k", "f"}},
      {"exact", {"square"}},
      {"final", {"functor"}},
      {"initial", {"functor"}},
      {"ff", {"functor"}},
      {"adjoint", {"functor"}},
      {"beck-chevalley", {"square", "target"}},
      {"derivator", {"target", "probes"}},
      {"check-equipment", {}},
  };
  return refs;
}

const std::map<std::string, std::string>& command_help() {
  static const std::map<std::string, std::string> help = {
      {"validate", "parse and validate the inputs"},
      {"comma", "comma category of a cospan, with projections, 2-cell and square"},
      {"tensor", "composite of a sequence of modules"},
      {"rext", "right extension of module F along module K"},
      {"ran", "pointwise right Kan extension"},
      {"lan", "pointwise left Kan extension"},
      {"exact", "is the square exact"},
      {"final", "is the functor final"},
      {"initial", "is the functor initial"},
      {"ff", "is the functor fully faithful"},
      {"adjoint", "right adjoint of a functor"},
      {"beck-chevalley", "Beck-Chevalley condition of a square for a target category"},
      {"derivator", "derivator axioms for a target category over probe functors"},
      {"check-equipment", "randomized oracle suites"},
  };
  return help;
}

const std::map<std::string, std::string>& ref_help() {
  static const std::map<std::string, std::string> help = {
      {"f", "functor or module name"},
      {"g", "functor name"},
      {"k", "functor or module name"},
      {"functor", "functor name"},
      {"square", "square name"},
      {"target", "category name"},
      {"modules", "comma separated module names"},
      {"probes", "comma separated functor names (default: all functors)"},
  };
  return help;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"virteq: finite virtual equipment calculator"};
  app.require_subcommand(1);

  virteq::io::CommandOptions opt;
  std::map<std::string, std::string> refs;
  std::uint64_t seed = 0;
  int size = 0;
  std::string out_path;

  for (const auto& name : virteq::io::command_names()) {
    CLI::App* sub = app.add_subcommand(name, command_help().at(name));
    sub->add_option("inputs", opt.inputs, "workspace files");
    sub->add_flag("--json", opt.json, "machine-readable report");
    sub->add_option("--out", out_path, "write output to this file");
    for (const auto& r : command_refs().at(name)) sub->add_option("--" + r, refs[r], ref_help().at(r));
    if (name == "check-equipment") {
      sub->add_option("--seed", seed, "random seed")->required();
      sub->add_option("--size", size, "instances per suite")->check(CLI::NonNegativeNumber);
    }
    sub->callback([&opt, &refs, &seed, &size, sub, name] {
      opt.command = name;
      if (name == "check-equipment") {
        opt.seed = seed;
        if (sub->count("--size")) opt.size = size;
      }
      for (const auto& [k, v] : refs)
        if (!v.empty()) opt.refs[k] = v;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  virteq::io::CommandResult res = virteq::io::run_cli(opt);
  std::cerr << res.error;
  if (!out_path.empty() && !res.output.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    out << res.output;
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
  } else {
    std::cout << res.output;
  }
  return res.exit;
}
