#pragma once

#include <optional>
#include <string>

#include "virteq/calculus.hpp"
#include "virteq/cell.hpp"

namespace virteq {

// ι: () ⇒ hom_module(A) over identities, component id_a at a.
Cell nullary_unit_cell(const CatRef& a);

// f²: hom_module(A) ⇒ hom_module(B) over (f, f), α ↦ f(α).
Cell functor_unit_cell(const FunctorMap& f);

// For f: A → B, with cov = B↓f: A ⇸ B and con = f↓B: B ⇸ A.
//   rho_cov:   B↓f ⇒ hom(B) over (f, id)
//   kappa_cov: hom(A) ⇒ B↓f over (id, f)
//   rho_con:   f↓B ⇒ hom(B) over (id, f)
//   kappa_con: hom(A) ⇒ f↓B over (f, id)
struct CompanionCells {
  ModuleRef cov;
  ModuleRef con;
  Cell kappa_cov, rho_cov, kappa_con, rho_con;
};
CompanionCells companion_conjoint_cells(const FunctorMap& f);

// The defining identities: both vertical composites equal f², and pasting κ
// beside ρ against the action cells reproduces the opposite action. Returns
// the first failing identity, or an empty string.
std::string check_companion_identities(const FunctorMap& f);

// The unique φ with φ∘(id, ..., ι, ..., id) = c, where ι fills the empty
// slot at boundary position `slot` (0 <= slot <= n) of c's source.
Cell factor_through_unit(const Cell& c, int slot);

enum class Side { Left, Right, Both };
enum class Direction { Add, Remove };

// Add: a cell (E..) ⇒ F over (f, g) becomes (f↓B, E.., D↓g) ⇒ F with the
// named vertical sides made identities. Remove: the inverse, which needs
// the named end module to be the matching representable (ShapeMismatch
// otherwise).
Cell transpose_cell(const Cell& c, Side side, Direction direction);

// α: f ⇒ g (f, g: A → B) gives B↓f ⇒ B↓g, e ↦ α_a ∘ e.
Cell nat_to_cell(const NatTrans& alpha);
// The inverse: the components at identities. ShapeMismatch unless c is a
// unary cell B↓f ⇒ B↓g over identities.
NatTrans cell_to_nat(const Cell& c, const FunctorMap& f, const FunctorMap& g);
// α: f ⇒ g gives g↓B ⇒ f↓B, e ↦ e ∘ α_a.
Cell nat_to_conjoint_cell(const NatTrans& alpha);
NatTrans conjoint_cell_to_nat(const Cell& c, const FunctorMap& f, const FunctorMap& g);

}  // namespace virteq
