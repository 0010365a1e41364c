#pragma once

#include <map>
#include <tuple>

#include "virteq/fincat.hpp"

namespace virteq {

// The comma category f↓g of a cospan f: B → A ← C : g, with objects
// (c, b, α: f b → g c) named "(c,b,α)" and morphisms (γ, β) satisfying
// g(γ)∘α = α'∘f(β), named "(γ,β,α,α')".
struct CommaData {
  CatRef cat;
  FunctorMap f;
  FunctorMap g;
  FunctorMap p1;  // to C
  FunctorMap p0;  // to B
  NatTrans phi;   // f∘p0 ⇒ g∘p1

  // Index of the object (c, b, α); throws DanglingRef when absent.
  int object(int c, int b, int alpha) const;
  std::map<std::tuple<int, int, int>, int> object_lookup;
};

CommaData comma(const FunctorMap& f, const FunctorMap& g);

// comma(id_A, id_A). p1 is the codomain projection, p0 the domain projection.
CommaData arrow_category(const CatRef& a);

// The functor X → f↓g determined by b: X → B, c: X → C and α: f∘b ⇒ g∘c.
FunctorMap induce_one_cell(const FunctorMap& b, const FunctorMap& c, const NatTrans& alpha, const CommaData& target);

}  // namespace virteq
