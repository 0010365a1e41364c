#pragma once

#include <map>
#include <string>
#include <vector>

#include "virteq/cell.hpp"
#include "virteq/module.hpp"

namespace virteq {

enum class Exec { Serial, Parallel };

// A module with the cocartesian cell exhibiting it as a composite.
struct Composite {
  ModuleRef module;
  Cell cell;
};

// E1 ⊗ ... ⊗ En as a coend quotient; each class is named after its least
// tuple, "(x,y,...)". With no modules this is hom_module(base) with the unit
// cell, with one module it is the module with its identity cell.
Composite tensor_many(const std::vector<ModuleRef>& modules, const CatRef& base = nullptr,
                      Exec exec = Exec::Parallel);
// E ⊗ F for E: A ⇸ B, F: B ⇸ C. MiddleMismatch unless cod E = dom F.
Composite tensor(const ModuleRef& e, const ModuleRef& f, Exec exec = Exec::Parallel);

// Right extension R: B ⇸ C of F: A ⇸ C along K: A ⇸ B, with counit
// (K, R) ⇒ F. family[η][i] is η applied to the i-th element of the row
// K(b, -) in index order.
struct RightExtension {
  ModuleRef module;
  Cell counit;
  ModuleRef k;
  ModuleRef f;
  std::vector<std::vector<int>> family;
  std::vector<std::vector<int>> rows;  // rows[b] = elements of K(b, -)
  std::vector<int> row_pos;            // position of a K element in its row
  std::map<std::vector<int>, int> by_family;  // [c, b, values...] -> element
};
RightExtension right_extension_module(const ModuleRef& k, const ModuleRef& f, Exec exec = Exec::Parallel);

// The unique χ: (G1..Gn) ⇒ R over (id_B, vg) with substitute(counit,
// {id_K, χ}) = theta, for theta: (K, G1..Gn) ⇒ F over (id_A, vg).
Cell right_extension_factor(const RightExtension& r, const Cell& theta);

struct CompositeReport {
  bool ok = true;
  int b = -1, a = -1;  // first failing entry
  int tensor_size = 0, target_size = 0;
  std::string witness;
};
// Compares the iterated tensor of the source with the target through the
// map induced by c. NonIdentityBoundary unless both vertical functors are
// identities.
CompositeReport composite_report(const Cell& c);
bool is_composite_cell(const Cell& c);

// The cell (hom A, E) ⇒ E, (hom A, E, hom B) ⇒ E or (E, hom B) ⇒ E given by
// the actions, over identities.
Cell action_cell(const ModuleRef& e, bool with_left, bool with_right);

// Unary cell over identities that is a bijection on every entry.
bool is_entrywise_iso(const Cell& c);

}  // namespace virteq
