#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "virteq/fincat.hpp"
#include "virteq/module.hpp"

namespace virteq {

// The horizontal source of a cell: composable modules E1: A0 ⇸ A1, ...,
// En: A(n-1) ⇸ An, or the single category A0 when n = 0. Tuples are the
// element tuples (e1, ..., en) with ei ∈ Ei(ai, a(i-1)), in lexicographic
// order of element indices; for n = 0 each tuple is the one-entry {a}.
struct SourceShape {
  std::vector<ModuleRef> modules;
  CatRef base;  // A0
  CatRef last;  // An
  std::vector<std::vector<int>> tuples;
  std::map<std::vector<int>, int> lookup;

  int length() const { return static_cast<int>(modules.size()); }
  int num_tuples() const { return static_cast<int>(tuples.size()); }
  // ai of tuple t, 0 <= i <= n.
  int object_at(int t, int i) const;
  int first_object(int t) const { return object_at(t, 0); }
  int last_object(int t) const { return object_at(t, length()); }
  int find(const std::vector<int>& tuple) const;
};
using ShapeRef = std::shared_ptr<const SourceShape>;

// Throws BoundaryMismatch when consecutive modules do not compose. `base` is
// required when `modules` is empty and ignored otherwise.
ShapeRef make_shape(const std::vector<ModuleRef>& modules, const CatRef& base = nullptr);

// A multicell (E1, ..., En) ⇒ F over vf: A0 → B0 and vg: An → Bn, with
// values[t] ∈ F(vg an, vf a0) for each source tuple t.
struct Cell {
  ShapeRef shape;
  ModuleRef target;
  FunctorMap vf;
  FunctorMap vg;
  std::vector<int> values;

  const std::vector<ModuleRef>& source() const { return shape->modules; }
  int at(const std::vector<int>& tuple) const { return values[shape->find(tuple)]; }
};
using CellRef = std::shared_ptr<const Cell>;

bool same_shape(const SourceShape& x, const SourceShape& y);
bool operator==(const Cell& x, const Cell& y);

// l1·c(t1)·r1 = l2·c(t2)·r2 in the target; -1 means no action.
struct CellConstraint {
  int t1, l1, r1;
  int t2, l2, r2;
};
std::vector<CellConstraint> cell_constraints(const SourceShape& shape, const FunctorMap& vf, const FunctorMap& vg);

// Pairs of tuples identified by the middle relation (x·β, y) ~ (x, β·y).
std::vector<std::pair<int, int>> middle_edges(const SourceShape& shape);

// Checks boundaries (BoundaryMismatch) and naturality (NaturalityViolation).
void validate_cell(const Cell& c);

Cell make_cell(ShapeRef shape, ModuleRef target, FunctorMap vf, FunctorMap vg, std::vector<int> values);
Cell make_cell(ShapeRef shape, ModuleRef target, FunctorMap vf, FunctorMap vg,
               const std::function<int(const std::vector<int>& tuple)>& value);

// All cells with the given boundary, in lexicographic order of values.
std::vector<Cell> enumerate_cells(const ShapeRef& shape, const ModuleRef& target, const FunctorMap& vf,
                                  const FunctorMap& vg);
std::size_t count_cells(const ShapeRef& shape, const ModuleRef& target, const FunctorMap& vf, const FunctorMap& vg);

Cell identity_cell(const ModuleRef& e);

// The multicategorical composite: inners[j] has target outer.source()[j].
Cell substitute_cells(const Cell& outer, const std::vector<Cell>& inners);

// Unary vertical composite.
Cell vertical(const Cell& second, const Cell& first);

// Components c(f x) of a nullary cell c over A, for f: X → A.
Cell whisker_nullary(const Cell& c, const FunctorMap& f);

// The restriction E(b, a) with its cartesian cell. element_of maps
// (b', a', e) for e ∈ E(b b', a a') to the restricted element.
struct RestrictionData {
  ModuleRef module;
  CellRef cell;
  FunctorMap a;
  FunctorMap b;
  std::map<std::tuple<int, int, int>, int> element_of;
};
RestrictionData restrict_module_data(const ModuleRef& e, const FunctorMap& a, const FunctorMap& b);

// The unique factorization of c (over (a∘f', b∘g')) through the cartesian
// cell of the restriction. Throws BoundaryMismatch if c does not have that
// boundary.
Cell factor_through_restriction(const Cell& c, const RestrictionData& r, const FunctorMap& f_prime,
                                const FunctorMap& g_prime);

}  // namespace virteq
