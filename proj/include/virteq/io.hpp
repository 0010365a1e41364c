#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "virteq/cell.hpp"
#include "virteq/fincat.hpp"
#include "virteq/kan.hpp"
#include "virteq/module.hpp"

namespace virteq::io {

struct FunctorEntry {
  std::string dom, cod;
  FunctorMap value;
};

struct ModuleEntry {
  std::string dom, cod;
  ModuleRef value;
};

struct NatEntry {
  std::string src, tgt;  // functor names
  NatTrans value;
};

struct SquareEntry {
  std::string h, k, f, g, lam;
  Square value;
};

struct CellEntry {
  std::vector<std::string> source;  // module names
  std::string base;                 // category name; used by nullary cells
  std::string target, vf, vg;
  Cell value;
};

// Named values by kind. References between entries are by name and always
// resolve.
class Workspace {
 public:
  std::map<std::string, CatRef> categories;
  std::map<std::string, FunctorEntry> functors;
  std::map<std::string, ModuleEntry> modules;
  std::map<std::string, NatEntry> nats;
  std::map<std::string, SquareEntry> squares;
  std::map<std::string, CellEntry> cells;

  // DanglingRef when absent.
  const CatRef& category(const std::string& name) const;
  const FunctorMap& functor(const std::string& name) const;
  const ModuleRef& module(const std::string& name) const;
  const NatTrans& nat(const std::string& name) const;
  const Square& square(const std::string& name) const;
  const Cell& cell(const std::string& name) const;

  // DuplicateName when the name is taken; DanglingRef for unknown references;
  // BoundaryMismatch when a value does not sit over the named references.
  void add_category(const std::string& name, CatRef c);
  void add_functor(const std::string& name, const std::string& dom, const std::string& cod, FunctorMap f);
  void add_module(const std::string& name, const std::string& dom, const std::string& cod, ModuleRef m);
  void add_nat(const std::string& name, const std::string& src, const std::string& tgt, NatTrans n);
  void add_square(const std::string& name, const std::string& h, const std::string& k, const std::string& f,
                  const std::string& g, const std::string& lam);
  void add_cell(const std::string& name, std::vector<std::string> source, const std::string& base,
                const std::string& target, const std::string& vf, const std::string& vg, Cell c);

  // Copies `name` of the given kind from `other` together with everything
  // it refers to. Names already present are kept.
  void import_category(const Workspace& other, const std::string& name);
  void import_functor(const Workspace& other, const std::string& name);
  void import_module(const Workspace& other, const std::string& name);
  void import_nat(const Workspace& other, const std::string& name);
  void import_square(const Workspace& other, const std::string& name);

  // The first category name bound to a category equal to c.
  std::optional<std::string> name_of(const CatRef& c) const;

  friend bool operator==(const Workspace& a, const Workspace& b);
};

// ParseError for malformed text or duplicate names, with file and line
// context; DanglingRef for unresolved references; ValidationError wrapping
// any other failure of the underlying constructors.
Workspace parse_workspace(std::string_view text, const std::string& source = "<input>");
Workspace parse_input(const std::vector<std::string>& paths);

// Canonical text: sorted keys, two-space indentation, LF newlines, trailing
// newline. `report_json`, when non-empty, must be a JSON object and is
// stored under the "report" key, which the parser ignores.
std::string serialize(const Workspace& ws, const std::string& report_json = "");

}  // namespace virteq::io
