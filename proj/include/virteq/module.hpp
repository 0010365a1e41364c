#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "virteq/comma.hpp"
#include "virteq/fincat.hpp"

namespace virteq {

class Module;
using ModuleRef = std::shared_ptr<const Module>;

// A module E from A to B (written E: A ⇸ B), i.e. a functor B^op × A → Set.
// E(b, a) is the entry at b ∈ B, a ∈ A. A acts on the left: α: a → a'
// sends E(b, a) to E(b, a'). B acts on the right: β: b' → b sends E(b, a)
// to E(b', a). Elements are numbered entry by entry, (b, a) in
// lexicographic order, and by name within an entry.
class Module {
 public:
  const CatRef& dom() const { return dom_; }
  const CatRef& cod() const { return cod_; }

  int num_elements() const { return static_cast<int>(names_.size()); }
  const std::string& element_name(int e) const { return names_[e]; }
  int elem_b(int e) const { return eb_[e]; }
  int elem_a(int e) const { return ea_[e]; }

  std::span<const int> entry(int b, int a) const {
    int k = b * dom_->num_objects() + a;
    return std::span<const int>(ids_.data() + start_[k], static_cast<std::size_t>(start_[k + 1] - start_[k]));
  }
  int entry_size(int b, int a) const { return static_cast<int>(entry(b, a).size()); }

  // α·e for α in dom with src(α) = elem_a(e).
  int left(int alpha, int e) const { return left_[e][dom_->out_pos(alpha)]; }
  // e·β for β in cod with tgt(β) = elem_b(e).
  int right(int e, int beta) const { return right_[e][cod_->in_pos(beta)]; }
  // Elements u ∈ E(src-side entry) with u·β = e, for β: b' → b with b' = elem_b(e).
  std::vector<int> right_preimage(int e, int beta) const;
  // Elements u with α·u = e, for α with tgt(α) = elem_a(e).
  std::vector<int> left_preimage(int alpha, int e) const;

  std::optional<int> find_element(const std::string& name) const;
  int element_index(const std::string& name) const;

  friend bool operator==(const Module& x, const Module& y);

 private:
  friend class ModuleBuilder;
  Module() = default;

  CatRef dom_;
  CatRef cod_;
  std::vector<std::string> names_;
  std::vector<int> eb_, ea_;
  std::vector<int> start_;
  std::vector<int> ids_;
  std::vector<std::vector<int>> left_;
  std::vector<std::vector<int>> right_;
  std::unordered_map<std::string, int> index_;
};

bool same_module(const ModuleRef& x, const ModuleRef& y);

// Raw module description; build() checks totality and the action laws
// (identity, associativity, interchange) exhaustively.
class ModuleBuilder {
 public:
  ModuleBuilder(CatRef dom, CatRef cod);

  int add_element(int b, int a, std::string name);
  void set_left(int alpha, int e, int result);
  void set_right(int e, int beta, int result);

  int num_elements() const { return static_cast<int>(names_.size()); }
  int elem_b(int e) const { return eb_[e]; }
  int elem_a(int e) const { return ea_[e]; }

  struct Built {
    ModuleRef module;
    std::vector<int> element_index;  // builder index -> canonical index
  };
  Built build_indexed() const;
  ModuleRef build() const { return build_indexed().module; }

 private:
  CatRef dom_;
  CatRef cod_;
  std::vector<std::string> names_;
  std::vector<int> eb_, ea_;
  std::vector<std::vector<int>> left_;
  std::vector<std::vector<int>> right_;
};

// E(b, a) = A(b, a), actions by composition. Elements are named "(a,b,α)".
ModuleRef hom_module(const CatRef& a);

enum class Variance { Covariant, Contravariant };

// Covariant B↓f: A ⇸ B with entries B(b, f a); contravariant f↓B: B ⇸ A with
// entries B(f a, b).
ModuleRef representable(const FunctorMap& f, Variance variance);

// For f: B → A, g: C → A, the module C ⇸ B with entries A(f b, g c).
// Elements are named like the objects of comma(f, g).
ModuleRef comma_module(const FunctorMap& f, const FunctorMap& g);

// The element (a, b, α) of a module built by comma_module, for α ∈ Z(f b, g a).
int comma_element(const Module& m, const FinCat& z, int b, int a, int alpha);
// The element α of hom_module(A).
int hom_element(const Module& hom, int alpha);
// For m = comma_module(f, g), the morphism of each element.
std::vector<int> comma_element_morphisms(const Module& m, const FunctorMap& f, const FunctorMap& g);

struct Cell;

// E(b, a) for E: A ⇸ B, a: A' → A, b: B' → B, with its cartesian cell.
struct Restriction {
  ModuleRef module;
  std::shared_ptr<const Cell> cell;
};
Restriction restrict_module(const ModuleRef& e, const FunctorMap& a, const FunctorMap& b);

// Two-sided discrete fibration E → A × B.
struct SpanRep {
  CatRef total;
  FunctorMap q;  // to A
  FunctorMap p;  // to B
};

// Objects (a,b,e), morphisms (α,β,e,e') with α·e = e'·β.
SpanRep category_of_elements(const ModuleRef& e);

struct TsdfReport {
  bool ok = true;
  std::string witness;
};
TsdfReport is_tsdf(const SpanRep& s);

// Elements are named after the objects of the total category.
ModuleRef span_to_module(const SpanRep& s);

// An isomorphism of total categories commuting with both legs, for spans
// that are two-sided discrete fibrations over the same base.
std::optional<FunctorMap> find_span_iso(const SpanRep& s, const SpanRep& t);

// Coproduct E_1 + ... + E_k of parallel modules; elements "i:e".
ModuleRef module_coproduct(const std::vector<ModuleRef>& parts);

// The smallest submodule containing `generators`.
ModuleRef generated_submodule(const ModuleRef& e, const std::vector<int>& generators);

// An entrywise natural bijection E → F, as a map on element indices.
std::optional<std::vector<int>> find_module_iso(const ModuleRef& e, const ModuleRef& f);

// Whether `map` (element of E -> element of F) is an entrywise natural
// bijection.
bool is_module_iso(const ModuleRef& e, const ModuleRef& f, const std::vector<int>& map);

}  // namespace virteq
