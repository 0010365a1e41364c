#pragma once

#include <string>
#include <utility>
#include <vector>

#include "virteq/fincat.hpp"

namespace virteq::catalog {

// Finite poset as a category. `covers` lists pairs (x, y) with x <= y; the
// reflexive-transitive closure is taken. The morphism x -> y is named "x<y".
CatRef poset(const std::vector<std::string>& elements, const std::vector<std::pair<int, int>>& covers);

CatRef empty();
CatRef terminal();
CatRef arrow();            // 0 -a-> 1
CatRef composable_pair();  // 0 -f-> 1 -g-> 2, with gf
CatRef parallel_pair();    // u, v : 0 -> 1
CatRef span();             // l <-p- s -q-> r
CatRef cospan();           // l -p-> c <-q- r
CatRef square();           // the poset 2 x 2 on 00, 01, 10, 11
CatRef discrete2();        // objects 0, 1
CatRef diamond();          // bot < a, b < top

struct Named {
  std::string name;
  CatRef cat;
};

// Every catalog category, in a fixed order.
const std::vector<Named>& all();
// Categories among which all functors are enumerated.
const std::vector<Named>& small();

struct NamedFunctor {
  std::string name;  // "<dom>-><cod>#<index>"
  FunctorMap functor;
};

// All functors between (not necessarily distinct) small categories.
const std::vector<NamedFunctor>& small_functors();

// Helpers that read more naturally in tests than raw indices.
int obj(const CatRef& c, const std::string& name);
int mor(const CatRef& c, const std::string& name);
FunctorMap pick(const CatRef& c, const std::string& object);

}  // namespace virteq::catalog
