#include "virteq/kan.hpp"

#include <set>

#include "virteq/catalog.hpp"

namespace virteq {

// ---------------------------------------------------------------------------
// Squares

void check_square(const Square& s) {
  if (!same_category(s.h.dom, s.k.dom) || !same_category(s.h.cod, s.f.dom) || !same_category(s.k.cod, s.g.dom) ||
      !same_category(s.f.cod, s.g.cod))
    throw Error(ErrorKind::BoundaryMismatch, "square functors do not fit together");
  if (!(s.lam.src == compose(s.f, s.h)) || !(s.lam.tgt == compose(s.g, s.k)))
    throw Error(ErrorKind::BoundaryMismatch, "square transformation has the wrong boundary");
}

Square make_square(FunctorMap h, FunctorMap k, FunctorMap f, FunctorMap g, NatTrans lam) {
  Square s{std::move(h), std::move(k), std::move(f), std::move(g), std::move(lam)};
  check_square(s);
  return s;
}

Square comma_square(const CommaData& c) { return Square{c.p0, c.p1, c.f, c.g, c.phi}; }

Square comma_square(const FunctorMap& f, const FunctorMap& g) { return comma_square(comma(f, g)); }

Cell square_canonical_cell(const Square& s) {
  check_square(s);
  const FinCat& A = *s.f.cod;
  auto idB = identity_functor(s.f.dom);
  auto idC = identity_functor(s.g.dom);
  auto kc = representable(s.k, Variance::Contravariant);
  auto bh = representable(s.h, Variance::Covariant);
  auto fg = comma_module(s.f, s.g);
  auto kc_m = comma_element_morphisms(*kc, s.k, idC);
  auto bh_m = comma_element_morphisms(*bh, idB, s.h);
  auto shape = make_shape({kc, bh});
  std::vector<int> values(shape->num_tuples());
  for (int t = 0; t < shape->num_tuples(); ++t) {
    int gamma = shape->tuples[t][0], beta = shape->tuples[t][1];
    int d = kc->elem_b(gamma);
    int m = A.compose(s.g.mor(kc_m[gamma]), A.compose(s.lam.components[d], s.f.mor(bh_m[beta])));
    values[t] = comma_element(*fg, A, bh->elem_b(beta), kc->elem_a(gamma), m);
  }
  return make_cell(shape, fg, idC, idB, std::move(values));
}

CompositeReport exactness_report(const Square& s) { return composite_report(square_canonical_cell(s)); }

bool is_exact_square(const Square& s) { return exactness_report(s).ok; }

Square paste_horizontal(const Square& left, const Square& right) {
  if (!(left.g == right.h)) throw Error(ErrorKind::BoundaryMismatch, "squares do not share a vertical edge");
  NatTrans lam = vertical(whisker(right.lam, left.k), whisker(right.f, left.lam));
  return make_square(left.h, compose(right.k, left.k), compose(right.f, left.f), right.g, lam);
}

Square paste_vertical(const Square& top, const Square& bottom) {
  if (!(top.f == bottom.k)) throw Error(ErrorKind::BoundaryMismatch, "squares do not share a horizontal edge");
  NatTrans lam = vertical(whisker(bottom.g, top.lam), whisker(bottom.lam, top.h));
  return make_square(compose(bottom.h, top.h), top.k, bottom.f, compose(bottom.g, top.g), lam);
}

// ---------------------------------------------------------------------------
// Final, initial, fully faithful

FinalityReport finality_report(const FunctorMap& k, Finality which) {
  const FinCat& B = *k.cod;
  auto bang_a = to_terminal(k.dom);
  auto bang_b = to_terminal(k.cod);
  auto id1 = identity_functor(bang_a.cod);
  Square sq = which == Finality::Final ? Square{k, bang_a, bang_b, id1, identity_nat(bang_a)}
                                       : Square{bang_a, k, id1, bang_b, identity_nat(bang_a)};
  bool exact = is_exact_square(sq);

  FinalityReport out;
  out.value = true;
  for (int b = 0; b < B.num_objects() && out.value; ++b) {
    CommaData c = which == Finality::Final ? comma(point(k.cod, b), k) : comma(k, point(k.cod, b));
    int n = count_components(*c.cat);
    if (n == 1) continue;
    out.value = false;
    std::string label = which == Finality::Final ? B.object_name(b) + "↓k" : "k↓" + B.object_name(b);
    out.witness = n == 0 ? label + " is empty" : label + " has " + std::to_string(n) + " components";
  }
  if (exact != out.value)
    throw Error(ErrorKind::OracleDisagreement, "exactness and connectivity disagree on finality");
  return out;
}

bool is_final(const FunctorMap& k) { return finality_report(k, Finality::Final).value; }
bool is_initial(const FunctorMap& k) { return finality_report(k, Finality::Initial).value; }

bool is_fully_faithful(const FunctorMap& k) {
  const FinCat& A = *k.dom;
  const FinCat& B = *k.cod;
  bool direct = true;
  std::map<std::pair<int, int>, std::set<int>> images;
  for (int m = 0; m < A.num_morphisms(); ++m) images[{A.src(m), A.tgt(m)}].insert(k.mor(m));
  std::map<std::pair<int, int>, int> hom_b;
  for (int m = 0; m < B.num_morphisms(); ++m) ++hom_b[{B.src(m), B.tgt(m)}];
  std::map<std::pair<int, int>, int> hom_a;
  for (int m = 0; m < A.num_morphisms(); ++m) ++hom_a[{A.src(m), A.tgt(m)}];
  for (int x = 0; x < A.num_objects() && direct; ++x)
    for (int y = 0; y < A.num_objects() && direct; ++y) {
      int na = hom_a.count({x, y}) ? hom_a[{x, y}] : 0;
      int nb = hom_b.count({k.obj(x), k.obj(y)}) ? hom_b[{k.obj(x), k.obj(y)}] : 0;
      int ni = images.count({x, y}) ? static_cast<int>(images[{x, y}].size()) : 0;
      direct = na == ni && ni == nb;
    }

  auto ha = hom_module(k.dom);
  auto kk = comma_module(k, k);
  auto shape = make_shape({ha});
  std::vector<int> values(shape->num_tuples());
  for (int m = 0; m < A.num_morphisms(); ++m) {
    int e = hom_element(*ha, m);
    values[shape->find({e})] = comma_element(*kk, B, A.src(m), A.tgt(m), k.mor(m));
  }
  auto idA = identity_functor(k.dom);
  bool via_cell = is_entrywise_iso(make_cell(shape, kk, idA, idA, std::move(values)));
  if (direct != via_cell)
    throw Error(ErrorKind::OracleDisagreement, "hom-set count and unit cell disagree on full faithfulness");
  return direct;
}

// ---------------------------------------------------------------------------
// Adjunctions

bool satisfies_triangles(const Adjunction& adj) {
  NatTrans left = vertical(whisker(adj.counit, adj.f), whisker(adj.f, adj.unit));
  NatTrans right = vertical(whisker(adj.u, adj.counit), whisker(adj.unit, adj.u));
  return left.components == identity_nat(adj.f).components && right.components == identity_nat(adj.u).components;
}

std::optional<Adjunction> find_right_adjoint(const FunctorMap& f) {
  const FinCat& A = *f.cod;
  const FinCat& B = *f.dom;
  auto idA = identity_functor(f.cod);
  auto idB = identity_functor(f.dom);
  auto fa = comma_module(f, idA);
  auto fa_m = comma_element_morphisms(*fa, f, idA);
  for (const auto& u : enumerate_functors(f.cod, f.dom)) {
    auto bu = comma_module(idB, u);
    auto iso = find_module_iso(fa, bu);
    if (!iso) continue;
    auto bu_m = comma_element_morphisms(*bu, idB, u);
    std::vector<int> inverse(bu->num_elements(), -1);
    for (int e = 0; e < fa->num_elements(); ++e) inverse[(*iso)[e]] = e;
    std::vector<int> unit(B.num_objects()), counit(A.num_objects());
    for (int b = 0; b < B.num_objects(); ++b)
      unit[b] = bu_m[(*iso)[comma_element(*fa, A, b, f.obj(b), A.identity(f.obj(b)))]];
    for (int a = 0; a < A.num_objects(); ++a)
      counit[a] = fa_m[inverse[comma_element(*bu, B, u.obj(a), a, B.identity(u.obj(a)))]];
    Adjunction adj{f, u, make_nat(idB, compose(u, f), unit), make_nat(compose(f, u), idA, counit)};
    if (!satisfies_triangles(adj))
      throw Error(ErrorKind::OracleDisagreement, "comma isomorphism does not give an adjunction");
    return adj;
  }
  return std::nullopt;
}

std::optional<Adjunction> right_adjoint_by_triangles(const FunctorMap& f) {
  auto idA = identity_functor(f.cod);
  auto idB = identity_functor(f.dom);
  for (const auto& u : enumerate_functors(f.cod, f.dom)) {
    auto units = enumerate_nats(idB, compose(u, f));
    if (units.empty()) continue;
    auto counits = enumerate_nats(compose(f, u), idA);
    for (const auto& eta : units)
      for (const auto& eps : counits) {
        Adjunction adj{f, u, eta, eps};
        if (satisfies_triangles(adj)) return adj;
      }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Pointwise Kan extensions

namespace {

// b↓k for Right, k↓b for Left, per object b of the codomain.
std::vector<CommaData> kan_commas(const FunctorMap& k, KanDirection direction) {
  std::vector<CommaData> out;
  for (int b = 0; b < k.cod->num_objects(); ++b)
    out.push_back(direction == KanDirection::Right ? comma(point(k.cod, b), k) : comma(k, point(k.cod, b)));
  return out;
}

std::optional<KanResult> pointwise_right(const FunctorMap& k, const FunctorMap& f, const std::vector<CommaData>& commas) {
  const FinCat& B = *k.cod;
  const FinCat& A = *k.dom;
  KanResult out;
  out.direction = KanDirection::Right;
  out.k = k;
  out.f = f;
  for (int b = 0; b < B.num_objects(); ++b) {
    FunctorMap d = compose(f, commas[b].p1);
    auto cone = limit_of_diagram(d);
    if (!cone) return std::nullopt;
    out.diagrams.push_back(std::move(d));
    out.cones.push_back(*cone);
  }
  out.commas = commas;
  std::vector<int> on_obj(B.num_objects()), on_mor(B.num_morphisms());
  for (int b = 0; b < B.num_objects(); ++b) on_obj[b] = out.cones[b].apex;
  for (int beta = 0; beta < B.num_morphisms(); ++beta) {
    int b = B.src(beta), b2 = B.tgt(beta);
    const CommaData& c2 = out.commas[b2];
    Cone other{on_obj[b], std::vector<int>(c2.cat->num_objects())};
    for (int j = 0; j < c2.cat->num_objects(); ++j) {
      int a = c2.p1.obj(j);
      int along = B.compose(c2.phi.components[j], beta);
      other.legs[j] = out.cones[b].legs[out.commas[b].object(a, 0, along)];
    }
    auto m = factor_through(out.diagrams[b2], out.cones[b2], other, ConeKind::Limit);
    if (!m) throw Error(ErrorKind::OracleDisagreement, "restricted limit cone does not factor");
    on_mor[beta] = *m;
  }
  out.r = make_functor(k.cod, f.cod, on_obj, on_mor);
  std::vector<int> mu(A.num_objects());
  for (int a = 0; a < A.num_objects(); ++a) {
    int ka = k.obj(a);
    mu[a] = out.cones[ka].legs[out.commas[ka].object(a, 0, B.identity(ka))];
  }
  out.mu = make_nat(compose(out.r, k), f, mu);
  return out;
}

std::optional<KanResult> pointwise_left(const FunctorMap& k, const FunctorMap& f, const std::vector<CommaData>& commas) {
  const FinCat& B = *k.cod;
  const FinCat& A = *k.dom;
  KanResult out;
  out.direction = KanDirection::Left;
  out.k = k;
  out.f = f;
  for (int b = 0; b < B.num_objects(); ++b) {
    FunctorMap d = compose(f, commas[b].p0);
    auto cone = colimit_of_diagram(d);
    if (!cone) return std::nullopt;
    out.diagrams.push_back(std::move(d));
    out.cones.push_back(*cone);
  }
  out.commas = commas;
  std::vector<int> on_obj(B.num_objects()), on_mor(B.num_morphisms());
  for (int b = 0; b < B.num_objects(); ++b) on_obj[b] = out.cones[b].apex;
  for (int beta = 0; beta < B.num_morphisms(); ++beta) {
    int b = B.src(beta), b2 = B.tgt(beta);
    const CommaData& c = out.commas[b];
    Cone other{on_obj[b2], std::vector<int>(c.cat->num_objects())};
    for (int j = 0; j < c.cat->num_objects(); ++j) {
      int a = c.p0.obj(j);
      int along = B.compose(beta, c.phi.components[j]);
      other.legs[j] = out.cones[b2].legs[out.commas[b2].object(0, a, along)];
    }
    auto m = factor_through(out.diagrams[b], out.cones[b], other, ConeKind::Colimit);
    if (!m) throw Error(ErrorKind::OracleDisagreement, "restricted colimit cone does not factor");
    on_mor[beta] = *m;
  }
  out.r = make_functor(k.cod, f.cod, on_obj, on_mor);
  std::vector<int> mu(A.num_objects());
  for (int a = 0; a < A.num_objects(); ++a) {
    int ka = k.obj(a);
    mu[a] = out.cones[ka].legs[out.commas[ka].object(0, a, B.identity(ka))];
  }
  out.mu = make_nat(f, compose(out.r, k), mu);
  return out;
}

KanVerification verify_right(const FunctorMap& k, const FunctorMap& f, const FunctorMap& r, const NatTrans& mu) {
  const FinCat& B = *k.cod;
  const FinCat& C = *f.cod;
  KanVerification out;

  auto idB = identity_functor(k.cod);
  auto idC = identity_functor(f.cod);
  auto km = representable(k, Variance::Covariant);
  auto fm = representable(f, Variance::Covariant);
  auto rm = representable(r, Variance::Covariant);
  auto km_m = comma_element_morphisms(*km, idB, k);
  auto rm_m = comma_element_morphisms(*rm, idC, r);
  RightExtension ext = right_extension_module(km, fm);
  auto shape = make_shape({km, rm});
  std::vector<int> values(shape->num_tuples());
  for (int t = 0; t < shape->num_tuples(); ++t) {
    int x = shape->tuples[t][0], gamma = shape->tuples[t][1];
    int a = km->elem_a(x);
    int m = C.compose(mu.components[a], C.compose(r.mor(km_m[x]), rm_m[gamma]));
    values[t] = comma_element(*fm, C, rm->elem_b(gamma), a, m);
  }
  Cell theta = make_cell(shape, fm, identity_functor(k.dom), idC, std::move(values));
  try {
    out.module_route = is_entrywise_iso(right_extension_factor(ext, theta));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NaturalityViolation) throw;
    out.module_route = false;
  }

  out.cone_route = true;
  for (int b = 0; b < B.num_objects() && out.cone_route; ++b) {
    CommaData c = comma(point(k.cod, b), k);
    FunctorMap d = compose(f, c.p1);
    Cone cone{r.obj(b), std::vector<int>(c.cat->num_objects())};
    for (int j = 0; j < c.cat->num_objects(); ++j)
      cone.legs[j] = C.compose(mu.components[c.p1.obj(j)], r.mor(c.phi.components[j]));
    out.cone_route = is_cone(d, cone, ConeKind::Limit) && is_universal_cone(d, cone, ConeKind::Limit);
  }
  return out;
}

}  // namespace

std::optional<KanResult> pointwise_kan(const FunctorMap& k, const FunctorMap& f, KanDirection direction) {
  if (!same_category(k.dom, f.dom)) throw Error(ErrorKind::DomainMismatch, "extension needs a common domain");
  auto commas = kan_commas(k, direction);
  return direction == KanDirection::Right ? pointwise_right(k, f, commas) : pointwise_left(k, f, commas);
}

FunctorMap opposite_functor(const FunctorMap& f) {
  return make_functor(opposite(f.dom), opposite(f.cod), f.on_obj, f.on_mor);
}

NatTrans opposite_nat(const NatTrans& n) {
  return make_nat(opposite_functor(n.tgt), opposite_functor(n.src), n.components);
}

KanVerification verify_routes(const FunctorMap& k, const FunctorMap& f, const FunctorMap& r, const NatTrans& mu,
                              KanDirection direction) {
  if (direction == KanDirection::Right) {
    if (!(mu.src == compose(r, k)) || !(mu.tgt == f))
      throw Error(ErrorKind::BoundaryMismatch, "counit must run from r∘k to f");
    return verify_right(k, f, r, mu);
  }
  if (!(mu.src == f) || !(mu.tgt == compose(r, k)))
    throw Error(ErrorKind::BoundaryMismatch, "unit must run from f to r∘k");
  return verify_right(opposite_functor(k), opposite_functor(f), opposite_functor(r), opposite_nat(mu));
}

bool verify_pointwise_kan(const FunctorMap& k, const FunctorMap& f, const FunctorMap& r, const NatTrans& mu,
                          KanDirection direction) {
  KanVerification v = verify_routes(k, f, r, mu, direction);
  if (v.module_route != v.cone_route)
    throw Error(ErrorKind::OracleDisagreement, "module and cone routes disagree on the extension");
  return v.module_route;
}

// ---------------------------------------------------------------------------
// Limit transfer

TransferReport limit_transfer(const FunctorMap& k, const FunctorMap& f, ConeKind kind) {
  TransferReport out;
  out.applicable = kind == ConeKind::Limit ? is_initial(k) : is_final(k);
  FunctorMap fk = compose(f, k);
  auto lf = universal_cone(f, kind);
  auto lfk = universal_cone(fk, kind);
  out.f_exists = lf.has_value();
  out.fk_exists = lfk.has_value();
  if (lf && lfk) {
    const FinCat& C = *f.cod;
    for (int m : C.out_of(lf->apex))
      if (C.tgt(m) == lfk->apex && is_iso(C, m)) out.apex_iso = true;
    Cone restricted{lf->apex, std::vector<int>(k.dom->num_objects())};
    for (int j = 0; j < k.dom->num_objects(); ++j) restricted.legs[j] = lf->legs[k.obj(j)];
    out.restricted_universal = is_universal_cone(fk, restricted, kind);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Functor categories

FunctorMap restriction_functor(const FunctorMap& u, const FunctorCategory& ey, const FunctorCategory& ex) {
  if (!same_category(ey.dom, u.cod) || !same_category(ex.dom, u.dom) || !same_category(ey.cod, ex.cod))
    throw Error(ErrorKind::DomainMismatch, "functor categories do not match the restricting functor");
  std::vector<int> on_obj(ey.functors.size()), on_mor(ey.nats.size());
  for (std::size_t i = 0; i < ey.functors.size(); ++i) on_obj[i] = ex.object_of(compose(ey.functors[i], u));
  for (std::size_t i = 0; i < ey.nats.size(); ++i) on_mor[i] = ex.morphism_of(whisker(ey.nats[i], u));
  return make_functor(ey.cat, ex.cat, on_obj, on_mor);
}

// ---------------------------------------------------------------------------
// Beck–Chevalley

BeckChevalleyReport beck_chevalley_report(const Square& s, const CatRef& e) {
  check_square(s);
  const FinCat& E = *e;
  BeckChevalleyReport out;

  out.right_applicable = true;
  out.right_ok = true;
  const auto g_commas = kan_commas(s.g, KanDirection::Right);
  const auto h_commas = kan_commas(s.h, KanDirection::Right);
  for (const auto& x : enumerate_functors(s.g.dom, e)) {
    auto rx = pointwise_right(s.g, x, g_commas);
    auto rh = rx ? pointwise_right(s.h, compose(x, s.k), h_commas) : std::nullopt;
    if (!rx || !rh) {
      out.right_applicable = false;
      out.right_ok = false;
      break;
    }
    std::vector<int> comps(s.h.cod->num_objects());
    for (int b = 0; b < s.h.cod->num_objects() && out.right_ok; ++b) {
      const CommaData& c = rh->commas[b];
      Cone other{rx->r.obj(s.f.obj(b)), std::vector<int>(c.cat->num_objects())};
      for (int j = 0; j < c.cat->num_objects(); ++j) {
        int d = c.p1.obj(j);
        int fb = rx->r.mor(s.f.mor(c.phi.components[j]));
        other.legs[j] = E.compose(rx->mu.components[s.k.obj(d)], E.compose(rx->r.mor(s.lam.components[d]), fb));
      }
      auto m = factor_through(rh->diagrams[b], rh->cones[b], other, ConeKind::Limit);
      if (!m || !is_iso(E, *m)) {
        out.right_ok = false;
        out.witness = "right mate at " + functor_label(x) + ", " + s.h.cod->object_name(b) + " is not invertible";
        break;
      }
      comps[b] = *m;
    }
    if (!out.right_ok) break;
    make_nat(compose(rx->r, s.f), rh->r, comps);
  }

  out.left_applicable = true;
  out.left_ok = true;
  const auto f_commas = kan_commas(s.f, KanDirection::Left);
  const auto k_commas = kan_commas(s.k, KanDirection::Left);
  for (const auto& y : enumerate_functors(s.f.dom, e)) {
    auto ly = pointwise_left(s.f, y, f_commas);
    auto lk = ly ? pointwise_left(s.k, compose(y, s.h), k_commas) : std::nullopt;
    if (!ly || !lk) {
      out.left_applicable = false;
      out.left_ok = false;
      break;
    }
    std::vector<int> comps(s.k.cod->num_objects());
    for (int c0 = 0; c0 < s.k.cod->num_objects() && out.left_ok; ++c0) {
      const CommaData& c = lk->commas[c0];
      Cone other{ly->r.obj(s.g.obj(c0)), std::vector<int>(c.cat->num_objects())};
      for (int j = 0; j < c.cat->num_objects(); ++j) {
        int d = c.p0.obj(j);
        int gc = ly->r.mor(s.g.mor(c.phi.components[j]));
        other.legs[j] = E.compose(gc, E.compose(ly->r.mor(s.lam.components[d]), ly->mu.components[s.h.obj(d)]));
      }
      auto m = factor_through(lk->diagrams[c0], lk->cones[c0], other, ConeKind::Colimit);
      if (!m || !is_iso(E, *m)) {
        out.left_ok = false;
        if (out.witness.empty())
          out.witness = "left mate at " + functor_label(y) + ", " + s.k.cod->object_name(c0) + " is not invertible";
        break;
      }
      comps[c0] = *m;
    }
    if (!out.left_ok) break;
    make_nat(lk->r, compose(ly->r, s.g), comps);
  }
  return out;
}

bool beck_chevalley(const Square& s, const CatRef& e) {
  BeckChevalleyReport r = beck_chevalley_report(s, e);
  if (!r.right_applicable && !r.left_applicable)
    throw Error(ErrorKind::NotApplicable, "neither mate has the extensions it needs");
  return (!r.right_applicable || r.right_ok) && (!r.left_applicable || r.left_ok);
}

// ---------------------------------------------------------------------------
// Derivator checks

namespace {

void add_unique(std::vector<CatRef>& cats, const CatRef& c) {
  for (const auto& x : cats)
    if (same_category(x, c)) return;
  cats.push_back(c);
}

bool der1_pair(const CatRef& e, const CatRef& a, const CatRef& b) {
  CoproductCategory ab = coproduct({a, b});
  FunctorCategory eab = functor_category(ab.cat, e);
  FunctorCategory ea = functor_category(a, e);
  FunctorCategory eb = functor_category(b, e);
  ProductCategory prod = product({ea.cat, eb.cat});
  std::vector<int> on_obj(eab.functors.size()), on_mor(eab.nats.size());
  for (std::size_t i = 0; i < eab.functors.size(); ++i) {
    int parts[2] = {ea.object_of(compose(eab.functors[i], ab.injections[0])),
                    eb.object_of(compose(eab.functors[i], ab.injections[1]))};
    on_obj[i] = prod.object(parts);
  }
  for (std::size_t i = 0; i < eab.nats.size(); ++i) {
    int parts[2] = {ea.morphism_of(whisker(eab.nats[i], ab.injections[0])),
                    eb.morphism_of(whisker(eab.nats[i], ab.injections[1]))};
    on_mor[i] = prod.morphism(parts);
  }
  return is_isomorphism(make_functor(eab.cat, prod.cat, on_obj, on_mor));
}

bool der2_cat(const CatRef& e, const CatRef& a) {
  FunctorCategory ea = functor_category(a, e);
  for (std::size_t i = 0; i < ea.nats.size(); ++i) {
    bool pointwise = true;
    for (int c : ea.nats[i].components) pointwise = pointwise && is_iso(*e, c);
    if (pointwise != is_iso(*ea.cat, static_cast<int>(i))) return false;
  }
  return true;
}

// E^(A×𝟚) → (E^A)^𝟚; returns {surjective and full, isomorphism}.
std::pair<bool, bool> der5_cat(const CatRef& e, const CatRef& a) {
  CatRef two = catalog::arrow();
  const FinCat& A = *a;
  const FinCat& T = *two;
  int t0 = catalog::obj(two, "0"), t1 = catalog::obj(two, "1"), arr = catalog::mor(two, "a");
  ProductCategory p = product({a, two});
  auto slice = [&](int t) {
    std::vector<int> on_obj(A.num_objects()), on_mor(A.num_morphisms());
    for (int x = 0; x < A.num_objects(); ++x) {
      int parts[2] = {x, t};
      on_obj[x] = p.object(parts);
    }
    for (int m = 0; m < A.num_morphisms(); ++m) {
      int parts[2] = {m, T.identity(t)};
      on_mor[m] = p.morphism(parts);
    }
    return make_functor(a, p.cat, on_obj, on_mor);
  };
  FunctorMap i0 = slice(t0), i1 = slice(t1);
  FunctorCategory eat = functor_category(p.cat, e);
  FunctorCategory ea = functor_category(a, e);
  FunctorCategory arrows = functor_category(two, ea.cat);

  std::vector<FunctorMap> images;
  std::vector<int> on_obj(eat.functors.size()), on_mor(eat.nats.size());
  for (std::size_t i = 0; i < eat.functors.size(); ++i) {
    const FunctorMap& x = eat.functors[i];
    std::vector<int> comps(A.num_objects());
    for (int o = 0; o < A.num_objects(); ++o) {
      int parts[2] = {A.identity(o), arr};
      comps[o] = x.mor(p.morphism(parts));
    }
    FunctorMap x0 = compose(x, i0), x1 = compose(x, i1);
    NatTrans along = make_nat(x0, x1, comps);
    std::vector<int> fo(T.num_objects()), fm(T.num_morphisms(), -1);
    fo[t0] = ea.object_of(x0);
    fo[t1] = ea.object_of(x1);
    fm[arr] = ea.morphism_of(along);
    images.push_back(make_functor(two, ea.cat, fo, fm));
    on_obj[i] = arrows.object_of(images.back());
  }
  for (std::size_t i = 0; i < eat.nats.size(); ++i) {
    const NatTrans& s = eat.nats[i];
    int src = ea.morphism_of(whisker(s, i0));
    int tgt = ea.morphism_of(whisker(s, i1));
    std::vector<int> comps(T.num_objects());
    comps[t0] = src;
    comps[t1] = tgt;
    int from = eat.object_of(s.src), to = eat.object_of(s.tgt);
    on_mor[i] = arrows.morphism_of(make_nat(images[from], images[to], comps));
  }
  FunctorMap cmp = make_functor(eat.cat, arrows.cat, on_obj, on_mor);

  std::set<int> hit(on_obj.begin(), on_obj.end());
  bool surjective = static_cast<int>(hit.size()) == arrows.cat->num_objects();
  bool full = true;
  std::set<std::pair<std::pair<int, int>, int>> mor_hit;
  for (std::size_t i = 0; i < on_mor.size(); ++i) {
    int m = on_mor[i];
    mor_hit.insert({{eat.cat->src(static_cast<int>(i)), eat.cat->tgt(static_cast<int>(i))}, m});
  }
  for (int x = 0; x < eat.cat->num_objects() && full; ++x)
    for (int y = 0; y < eat.cat->num_objects() && full; ++y)
      for (int m : arrows.cat->out_of(on_obj[x]))
        if (arrows.cat->tgt(m) == on_obj[y] && !mor_hit.count({{x, y}, m})) {
          full = false;
          break;
        }
  return {surjective && full, is_isomorphism(cmp)};
}

}  // namespace

DerivatorReport derivator_checks(const CatRef& e, const std::vector<FunctorMap>& probes) {
  DerivatorReport out;
  std::vector<CatRef> cats;
  for (const auto& u : probes) {
    add_unique(cats, u.dom);
    add_unique(cats, u.cod);
  }

  if (functor_category(empty_category(), e).cat->num_objects() != 1) {
    out.der1 = false;
    out.notes.push_back("Der1: the empty diagram category is not terminal");
  }
  for (const auto& a : cats)
    for (const auto& b : cats)
      if (!der1_pair(e, a, b)) {
        out.der1 = false;
        out.notes.push_back("Der1: coproduct comparison fails");
      }

  for (const auto& a : cats)
    if (!der2_cat(e, a)) {
      out.der2 = false;
      out.notes.push_back("Der2: a pointwise invertible transformation is not invertible");
    }

  for (const auto& u : probes)
    for (const auto& x : enumerate_functors(u.dom, e)) {
      if (!pointwise_kan(u, x, KanDirection::Right))
        out.missing.push_back("Ran along " + functor_label(u) + " of " + functor_label(x));
      if (!pointwise_kan(u, x, KanDirection::Left))
        out.missing.push_back("Lan along " + functor_label(u) + " of " + functor_label(x));
    }
  out.der3 = out.missing.empty();

  for (const auto& u : probes)
    for (int b = 0; b < u.cod->num_objects(); ++b) {
      for (const Square& sq : {comma_square(u, point(u.cod, b)), comma_square(point(u.cod, b), u)}) {
        BeckChevalleyReport r = beck_chevalley_report(sq, e);
        if ((r.right_applicable && !r.right_ok) || (r.left_applicable && !r.left_ok)) {
          out.der4 = false;
          out.notes.push_back("Der4: " + r.witness);
        }
      }
    }

  for (const auto& a : cats) {
    auto [surjective_full, iso] = der5_cat(e, a);
    if (!surjective_full || !iso) {
      out.der5 = false;
      out.notes.push_back("Der5: arrow comparison is not an isomorphism");
    }
  }
  return out;
}

}  // namespace virteq
