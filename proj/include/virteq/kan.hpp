#pragma once

#include <optional>
#include <string>
#include <vector>

#include "virteq/calculus.hpp"
#include "virteq/cell.hpp"
#include "virteq/comma.hpp"
#include "virteq/fincat.hpp"

namespace virteq {

//   D --k--> C
//   |h       |g
//   B --f--> A     lam: f∘h ⇒ g∘k
struct Square {
  FunctorMap h;
  FunctorMap k;
  FunctorMap f;
  FunctorMap g;
  NatTrans lam;
};

// BoundaryMismatch unless the functors and lam fit together.
void check_square(const Square& s);
Square make_square(FunctorMap h, FunctorMap k, FunctorMap f, FunctorMap g, NatTrans lam);
Square comma_square(const CommaData& c);
Square comma_square(const FunctorMap& f, const FunctorMap& g);

// λ̂: (k↓C, B↓h) ⇒ f↓g over identities, (γ, β) ↦ g(γ)∘lam_d∘f(β).
Cell square_canonical_cell(const Square& s);
CompositeReport exactness_report(const Square& s);
bool is_exact_square(const Square& s);

// left.g must equal right.h; the pasted square has k = right.k∘left.k and
// f = right.f∘left.f.
Square paste_horizontal(const Square& left, const Square& right);
// top.f must equal bottom.k; the pasted square has h = bottom.h∘top.h and
// g = bottom.g∘top.g.
Square paste_vertical(const Square& top, const Square& bottom);

enum class Finality { Final, Initial };

struct FinalityReport {
  bool value = false;
  std::string witness;  // the first disconnected comma, when false
};
// Final: b↓k connected for every b. Initial: k↓b connected for every b.
// Computed both through exactness of the square with terminal sides and
// through connectivity; OracleDisagreement if they differ.
FinalityReport finality_report(const FunctorMap& k, Finality which);
bool is_final(const FunctorMap& k);
bool is_initial(const FunctorMap& k);

// hom-set bijection, cross-checked against the cell hom(A) ⇒ k↓k.
bool is_fully_faithful(const FunctorMap& k);

// f ⊣ u with unit id_B ⇒ u∘f and counit f∘u ⇒ id_A.
struct Adjunction {
  FunctorMap f;
  FunctorMap u;
  NatTrans unit;
  NatTrans counit;
};
bool satisfies_triangles(const Adjunction& adj);
// First u in canonical order with f↓A ≅ B↓u entrywise.
std::optional<Adjunction> find_right_adjoint(const FunctorMap& f);
// Brute force over u, unit and counit.
std::optional<Adjunction> right_adjoint_by_triangles(const FunctorMap& f);

enum class KanDirection { Right, Left };

// Right: r∘k ⇒ f in mu, with r(b) the limit over b↓k. Left: f ⇒ r∘k in mu,
// with r(b) the colimit over k↓b.
struct KanResult {
  KanDirection direction = KanDirection::Right;
  FunctorMap k;
  FunctorMap f;
  FunctorMap r;
  NatTrans mu;
  std::vector<CommaData> commas;   // per object of B
  std::vector<FunctorMap> diagrams;
  std::vector<Cone> cones;
};
std::optional<KanResult> pointwise_kan(const FunctorMap& k, const FunctorMap& f, KanDirection direction);

struct KanVerification {
  bool module_route = false;  // right extension of C↓f along B↓k is C↓r
  bool cone_route = false;    // every induced cone over b↓k is universal
};
KanVerification verify_routes(const FunctorMap& k, const FunctorMap& f, const FunctorMap& r, const NatTrans& mu,
                              KanDirection direction);
// Both routes; OracleDisagreement if they differ.
bool verify_pointwise_kan(const FunctorMap& k, const FunctorMap& f, const FunctorMap& r, const NatTrans& mu,
                          KanDirection direction = KanDirection::Right);

FunctorMap opposite_functor(const FunctorMap& f);
NatTrans opposite_nat(const NatTrans& n);  // reverses direction

// Limit for initial k, colimit for final k: existence of the (co)limit of f
// and of f∘k agree, and their apexes are isomorphic.
struct TransferReport {
  bool applicable = false;  // k initial (Limit) or final (Colimit)
  bool f_exists = false;
  bool fk_exists = false;
  bool apex_iso = false;
  bool restricted_universal = false;  // the chosen cone of f restricted along k
  bool holds() const {
    return !applicable || (f_exists == fk_exists && (!f_exists || (apex_iso && restricted_universal)));
  }
};
TransferReport limit_transfer(const FunctorMap& k, const FunctorMap& f, ConeKind kind);

// u*: E^Y → E^X for u: X → Y, over the given functor categories.
FunctorMap restriction_functor(const FunctorMap& u, const FunctorCategory& ey, const FunctorCategory& ex);

struct BeckChevalleyReport {
  bool right_applicable = false;
  bool left_applicable = false;
  bool right_ok = false;
  bool left_ok = false;
  std::string witness;
};
// Right: f*∘Ran_g ⇒ Ran_h∘k* is iso. Left: Lan_k∘h* ⇒ g*∘Lan_f is iso. A
// side whose extensions do not all exist is not applicable.
BeckChevalleyReport beck_chevalley_report(const Square& s, const CatRef& e);
// NotApplicable when neither side applies.
bool beck_chevalley(const Square& s, const CatRef& e);

struct DerivatorReport {
  bool der1 = true, der2 = true, der3 = true, der4 = true, der5 = true;
  std::vector<std::string> missing;  // Der3: "Ran along <u> of <X>" style entries
  std::vector<std::string> notes;
};
DerivatorReport derivator_checks(const CatRef& e, const std::vector<FunctorMap>& probes);

}  // namespace virteq
