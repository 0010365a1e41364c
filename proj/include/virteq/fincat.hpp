#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "virteq/error.hpp"

namespace virteq {

class FinCat;
using CatRef = std::shared_ptr<const FinCat>;

struct MorphismInfo {
  std::string name;
  int src = -1;
  int tgt = -1;
};

// A finite category in canonical form: objects and morphisms are indexed in
// lexicographic order of their names, identities are named "id:<obj>", and
// composition is total on composable pairs. Instances are only produced by
// CategoryBuilder::build, which checks every category law, and are immutable.
class FinCat {
 public:
  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms_.size()); }

  const std::string& object_name(int o) const { return objects_[o]; }
  const std::string& morphism_name(int m) const { return morphisms_[m].name; }
  int src(int m) const { return morphisms_[m].src; }
  int tgt(int m) const { return morphisms_[m].tgt; }
  int identity(int o) const { return identity_[o]; }
  bool is_identity(int m) const { return is_identity_[m] != 0; }

  // second ∘ first, or -1 when tgt(first) != src(second).
  int compose(int second, int first) const {
    if (morphisms_[first].tgt != morphisms_[second].src) return -1;
    return after_[first][pos_in_out_[second]];
  }

  std::span<const int> hom(int x, int y) const;
  std::span<const int> out_of(int x) const { return out_[x]; }
  std::span<const int> into(int y) const { return in_[y]; }
  // Position of m inside out_of(src(m)) and into(tgt(m)).
  int out_pos(int m) const { return pos_in_out_[m]; }
  int in_pos(int m) const { return pos_in_in_[m]; }

  std::optional<int> find_object(std::string_view name) const;
  std::optional<int> find_morphism(std::string_view name) const;
  // Throw DanglingRef when absent.
  int object_index(std::string_view name) const;
  int morphism_index(std::string_view name) const;

  friend bool operator==(const FinCat& a, const FinCat& b);

 private:
  friend class CategoryBuilder;
  FinCat() = default;

  std::vector<std::string> objects_;
  std::vector<MorphismInfo> morphisms_;
  std::vector<int> identity_;
  std::vector<char> is_identity_;
  std::vector<std::vector<int>> out_;   // sorted by (tgt, index)
  std::vector<std::vector<int>> in_;
  std::vector<int> pos_in_out_;         // position of m inside out_[src(m)]
  std::vector<int> pos_in_in_;
  std::vector<std::vector<int>> after_; // after_[f][pos_in_out_[g]] = g∘f
  std::unordered_map<std::string, int> obj_index_;
  std::unordered_map<std::string, int> mor_index_;
};

bool same_category(const CatRef& a, const CatRef& b);

struct BuiltCategory {
  CatRef cat;
  std::vector<int> object_index;    // builder index -> canonical index
  std::vector<int> morphism_index;
};

// Collects a raw category description. Identities are synthesized by
// add_object; composites involving an identity are implied and may be
// omitted. build() verifies the table and canonicalizes the ordering.
class CategoryBuilder {
 public:
  int add_object(std::string name);
  int add_morphism(std::string name, int src, int tgt);
  void set_composite(int second, int first, int result);

  int identity(int obj) const { return identities_[obj]; }
  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms_.size()); }
  const MorphismInfo& morphism(int m) const { return morphisms_[m]; }
  bool is_identity(int m) const { return is_identity_[m] != 0; }

  BuiltCategory build() const;

 private:
  std::vector<std::string> objects_;
  std::vector<MorphismInfo> morphisms_;
  std::vector<int> identities_;
  std::vector<char> is_identity_;
  std::map<std::pair<int, int>, int> comp_;  // (second, first) -> result
};

// ---------------------------------------------------------------------------
// Functors and natural transformations

struct FunctorMap {
  CatRef dom;
  CatRef cod;
  std::vector<int> on_obj;
  std::vector<int> on_mor;

  int obj(int o) const { return on_obj[o]; }
  int mor(int m) const { return on_mor[m]; }
};

bool operator==(const FunctorMap& a, const FunctorMap& b);

// Validates preservation of src, tgt, identities and composition. Entries of
// on_mor equal to -1 at identity morphisms are filled in; -1 elsewhere is a
// DanglingRef.
FunctorMap make_functor(CatRef dom, CatRef cod, std::vector<int> on_obj, std::vector<int> on_mor);

// Same, with images given by name. Omitted identities are filled in.
FunctorMap make_functor_named(CatRef dom, CatRef cod, const std::map<std::string, std::string>& on_obj,
                              const std::map<std::string, std::string>& on_mor);

FunctorMap identity_functor(const CatRef& c);
FunctorMap compose(const FunctorMap& second, const FunctorMap& first);
FunctorMap constant_functor(const CatRef& dom, const CatRef& cod, int obj);
// The functor 𝟙 → cod picking obj.
FunctorMap point(const CatRef& cod, int obj);
// The unique functor dom → 𝟙.
FunctorMap to_terminal(const CatRef& dom);

bool is_identity_functor(const FunctorMap& f);
// Bijective on objects and on morphisms.
bool is_isomorphism(const FunctorMap& f);

struct NatTrans {
  FunctorMap src;
  FunctorMap tgt;
  std::vector<int> components;
};

bool operator==(const NatTrans& a, const NatTrans& b);

NatTrans make_nat(FunctorMap src, FunctorMap tgt, std::vector<int> components);
NatTrans identity_nat(const FunctorMap& f);
NatTrans vertical(const NatTrans& second, const NatTrans& first);
// σ·H : F∘H ⇒ G∘H
NatTrans whisker(const NatTrans& sigma, const FunctorMap& pre);
// K·σ : K∘F ⇒ K∘G
NatTrans whisker(const FunctorMap& post, const NatTrans& sigma);

std::optional<int> inverse_of(const FinCat& c, int m);
bool is_iso(const FinCat& c, int m);

// ---------------------------------------------------------------------------
// Constructions

CatRef terminal_category();
CatRef empty_category();
CatRef opposite(const CatRef& c);

struct ProductCategory {
  CatRef cat;
  std::vector<CatRef> factors;
  std::vector<FunctorMap> projections;
  int object(std::span<const int> parts) const;
  int morphism(std::span<const int> parts) const;

  std::map<std::vector<int>, int> object_lookup;
  std::map<std::vector<int>, int> morphism_lookup;
};

struct CoproductCategory {
  CatRef cat;
  std::vector<CatRef> summands;
  std::vector<FunctorMap> injections;
};

ProductCategory product(const std::vector<CatRef>& factors);
CoproductCategory coproduct(const std::vector<CatRef>& summands);

enum class Construction { Terminal, Opposite, Product, Coproduct };
CatRef construct(Construction kind, const std::vector<CatRef>& operands);

struct PullbackCategory {
  CatRef cat;
  FunctorMap pi1;  // to dom(f)
  FunctorMap pi2;  // to dom(g)
};

// Strict pullback of the cospan f: X → Z ← Y : g.
PullbackCategory pullback(const FunctorMap& f, const FunctorMap& g);

// ---------------------------------------------------------------------------
// Enumeration

std::vector<FunctorMap> enumerate_functors(const CatRef& a, const CatRef& b);
std::vector<NatTrans> enumerate_nats(const FunctorMap& f, const FunctorMap& g);

std::string functor_label(const FunctorMap& f);

struct FunctorCategory {
  CatRef cat;
  CatRef dom;
  CatRef cod;
  std::vector<FunctorMap> functors;  // indexed by object of cat
  std::vector<NatTrans> nats;        // indexed by morphism of cat

  int object_of(const FunctorMap& f) const;
  int morphism_of(const NatTrans& n) const;

  std::map<std::vector<int>, int> object_lookup;
  std::map<std::vector<int>, int> morphism_lookup;
};

FunctorCategory functor_category(const CatRef& a, const CatRef& e);

// ---------------------------------------------------------------------------
// Limits and connectivity

enum class ConeKind { Limit, Colimit };

// For a limit cone, legs[j] : apex → d(j); for a colimit cone, d(j) → apex.
struct Cone {
  int apex = -1;
  std::vector<int> legs;
};

bool operator==(const Cone& a, const Cone& b);

bool is_cone(const FunctorMap& d, const Cone& c, ConeKind kind);
std::vector<Cone> enumerate_cones(const FunctorMap& d, int apex, ConeKind kind, Budget& budget);
std::vector<Cone> enumerate_cones(const FunctorMap& d, ConeKind kind);

// The unique mediating morphism from `other` to the universal cone (limit)
// or from the universal cone to `other` (colimit), if exactly one exists.
std::optional<int> factor_through(const FunctorMap& d, const Cone& universal, const Cone& other,
                                  ConeKind kind);
bool is_universal_cone(const FunctorMap& d, const Cone& c, ConeKind kind);

// Exhaustive search; among universal cones the least (apex, legs) wins.
std::optional<Cone> limit_of_diagram(const FunctorMap& d);
std::optional<Cone> colimit_of_diagram(const FunctorMap& d);
std::optional<Cone> universal_cone(const FunctorMap& d, ConeKind kind);

bool is_connected(const FinCat& c);
int count_components(const FinCat& c);

}  // namespace virteq
