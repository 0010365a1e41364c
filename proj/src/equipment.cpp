#include "virteq/equipment.hpp"

namespace virteq {

namespace {

std::vector<int> hom_morphisms(const Module& hom) {
  std::vector<int> out(hom.num_elements());
  for (int m = 0; m < hom.dom()->num_morphisms(); ++m) out[hom_element(hom, m)] = m;
  return out;
}

// The functor whose representable of the given variance is literally m.
std::optional<FunctorMap> find_representing(const ModuleRef& m, Variance variance) {
  CatRef from = variance == Variance::Covariant ? m->dom() : m->cod();
  CatRef to = variance == Variance::Covariant ? m->cod() : m->dom();
  for (const auto& f : enumerate_functors(from, to))
    if (*representable(f, variance) == *m) return f;
  return std::nullopt;
}

Cell add_left(const Cell& c) {
  const FunctorMap& f = c.vf;
  auto con = representable(f, Variance::Contravariant);
  auto morph = comma_element_morphisms(*con, f, identity_functor(f.cod));
  std::vector<ModuleRef> modules{con};
  modules.insert(modules.end(), c.source().begin(), c.source().end());
  auto shape = make_shape(modules);
  const Module& F = *c.target;
  std::vector<int> values(shape->num_tuples());
  std::vector<int> rest;
  for (int t = 0; t < shape->num_tuples(); ++t) {
    const auto& tup = shape->tuples[t];
    if (c.shape->length() == 0)
      rest.assign(1, con->elem_b(tup[0]));
    else
      rest.assign(tup.begin() + 1, tup.end());
    values[t] = F.left(morph[tup[0]], c.at(rest));
  }
  return Cell{shape, c.target, identity_functor(f.cod), c.vg, std::move(values)};
}

Cell add_right(const Cell& c) {
  const FunctorMap& g = c.vg;
  auto cov = representable(g, Variance::Covariant);
  auto morph = comma_element_morphisms(*cov, identity_functor(g.cod), g);
  std::vector<ModuleRef> modules = c.source();
  modules.push_back(cov);
  auto shape = make_shape(modules);
  const Module& F = *c.target;
  std::vector<int> values(shape->num_tuples());
  std::vector<int> rest;
  for (int t = 0; t < shape->num_tuples(); ++t) {
    const auto& tup = shape->tuples[t];
    if (c.shape->length() == 0)
      rest.assign(1, cov->elem_a(tup[0]));
    else
      rest.assign(tup.begin(), tup.end() - 1);
    values[t] = F.right(c.at(rest), morph[tup.back()]);
  }
  return Cell{shape, c.target, c.vf, identity_functor(g.cod), std::move(values)};
}

Cell remove_left(const Cell& c) {
  if (c.shape->length() == 0 || !is_identity_functor(c.vf))
    throw Error(ErrorKind::ShapeMismatch, "left transpose needs a leading module over an identity");
  const ModuleRef& m = c.source().front();
  auto f = find_representing(m, Variance::Contravariant);
  if (!f) throw Error(ErrorKind::ShapeMismatch, "leading module is not a contravariant representable");
  const FinCat& B0 = *f->cod;
  std::vector<ModuleRef> modules(c.source().begin() + 1, c.source().end());
  auto shape = make_shape(modules, m->cod());
  std::vector<int> values(shape->num_tuples());
  std::vector<int> full;
  for (int t = 0; t < shape->num_tuples(); ++t) {
    int x = shape->first_object(t);
    int u = comma_element(*m, B0, x, f->obj(x), B0.identity(f->obj(x)));
    full.assign(1, u);
    if (!modules.empty()) full.insert(full.end(), shape->tuples[t].begin(), shape->tuples[t].end());
    values[t] = c.at(full);
  }
  return Cell{shape, c.target, *f, c.vg, std::move(values)};
}

Cell remove_right(const Cell& c) {
  if (c.shape->length() == 0 || !is_identity_functor(c.vg))
    throw Error(ErrorKind::ShapeMismatch, "right transpose needs a trailing module over an identity");
  const ModuleRef& m = c.source().back();
  auto g = find_representing(m, Variance::Covariant);
  if (!g) throw Error(ErrorKind::ShapeMismatch, "trailing module is not a covariant representable");
  const FinCat& Bn = *g->cod;
  std::vector<ModuleRef> modules(c.source().begin(), c.source().end() - 1);
  auto shape = make_shape(modules, m->dom());
  std::vector<int> values(shape->num_tuples());
  std::vector<int> full;
  for (int t = 0; t < shape->num_tuples(); ++t) {
    int y = shape->last_object(t);
    int v = comma_element(*m, Bn, g->obj(y), y, Bn.identity(g->obj(y)));
    if (modules.empty())
      full.clear();
    else
      full = shape->tuples[t];
    full.push_back(v);
    values[t] = c.at(full);
  }
  return Cell{shape, c.target, c.vf, *g, std::move(values)};
}

}  // namespace

Cell nullary_unit_cell(const CatRef& a) { return tensor_many({}, a).cell; }

Cell functor_unit_cell(const FunctorMap& f) {
  auto ha = hom_module(f.dom);
  auto hb = hom_module(f.cod);
  auto morph = hom_morphisms(*ha);
  auto shape = make_shape({ha});
  std::vector<int> values(shape->num_tuples());
  for (int t = 0; t < shape->num_tuples(); ++t) values[t] = hom_element(*hb, f.mor(morph[shape->tuples[t][0]]));
  return Cell{shape, hb, f, f, std::move(values)};
}

CompanionCells companion_conjoint_cells(const FunctorMap& f) {
  const FinCat& A = *f.dom;
  const FinCat& B = *f.cod;
  auto idA = identity_functor(f.dom);
  auto idB = identity_functor(f.cod);
  auto ha = hom_module(f.dom);
  auto hb = hom_module(f.cod);
  auto ha_morph = hom_morphisms(*ha);
  CompanionCells out;
  out.cov = representable(f, Variance::Covariant);
  out.con = representable(f, Variance::Contravariant);
  auto cov_morph = comma_element_morphisms(*out.cov, idB, f);
  auto con_morph = comma_element_morphisms(*out.con, f, idB);

  auto unary = [](const ModuleRef& src, const ModuleRef& tgt, const FunctorMap& vf, const FunctorMap& vg,
                  const std::function<int(int)>& value) {
    auto shape = make_shape({src});
    std::vector<int> values(shape->num_tuples());
    for (int t = 0; t < shape->num_tuples(); ++t) values[t] = value(shape->tuples[t][0]);
    return Cell{shape, tgt, vf, vg, std::move(values)};
  };
  out.rho_cov = unary(out.cov, hb, f, idB, [&](int e) { return hom_element(*hb, cov_morph[e]); });
  out.kappa_cov = unary(ha, out.cov, idA, f, [&](int e) {
    int alpha = ha_morph[e];
    return comma_element(*out.cov, B, f.obj(A.src(alpha)), A.tgt(alpha), f.mor(alpha));
  });
  out.rho_con = unary(out.con, hb, idB, f, [&](int e) { return hom_element(*hb, con_morph[e]); });
  out.kappa_con = unary(ha, out.con, f, idA, [&](int e) {
    int alpha = ha_morph[e];
    return comma_element(*out.con, B, A.src(alpha), f.obj(A.tgt(alpha)), f.mor(alpha));
  });
  return out;
}

std::string check_companion_identities(const FunctorMap& f) {
  CompanionCells cc = companion_conjoint_cells(f);
  Cell f2 = functor_unit_cell(f);
  for (const Cell* c : {&cc.rho_cov, &cc.kappa_cov, &cc.rho_con, &cc.kappa_con}) validate_cell(*c);
  if (!(vertical(cc.rho_cov, cc.kappa_cov) == f2)) return "rho_cov after kappa_cov is not the unit cell of f";
  if (!(vertical(cc.rho_con, cc.kappa_con) == f2)) return "rho_con after kappa_con is not the unit cell of f";
  if (!(substitute_cells(action_cell(cc.cov, false, true), {cc.kappa_cov, cc.rho_cov}) ==
        action_cell(cc.cov, true, false)))
    return "kappa_cov beside rho_cov does not give the left action of the companion";
  if (!(substitute_cells(action_cell(cc.con, true, false), {cc.rho_con, cc.kappa_con}) ==
        action_cell(cc.con, false, true)))
    return "rho_con beside kappa_con does not give the right action of the conjoint";
  return {};
}

Cell factor_through_unit(const Cell& c, int slot) {
  const int n = c.shape->length();
  if (slot < 0 || slot > n) throw Error(ErrorKind::ShapeMismatch, "unit slot out of range");
  CatRef ak = slot == 0 ? c.shape->base : c.source()[slot - 1]->cod();
  auto hom = hom_module(ak);
  auto morph = hom_morphisms(*hom);
  std::vector<ModuleRef> modules = c.source();
  modules.insert(modules.begin() + slot, hom);
  auto shape = make_shape(modules);
  std::vector<int> values(shape->num_tuples());
  std::vector<int> orig;
  for (int t = 0; t < shape->num_tuples(); ++t) {
    const auto& tup = shape->tuples[t];
    int mu = morph[tup[slot]];
    if (n == 0) {
      values[t] = c.target->left(c.vf.mor(mu), c.values[ak->src(mu)]);
      continue;
    }
    orig = tup;
    orig.erase(orig.begin() + slot);
    if (slot > 0)
      orig[slot - 1] = c.source()[slot - 1]->right(tup[slot - 1], mu);
    else
      orig[0] = c.source()[0]->left(mu, tup[1]);
    values[t] = c.at(orig);
  }
  return Cell{shape, c.target, c.vf, c.vg, std::move(values)};
}

Cell transpose_cell(const Cell& c, Side side, Direction direction) {
  if (direction == Direction::Add) {
    if (side == Side::Left) return add_left(c);
    if (side == Side::Right) return add_right(c);
    return add_right(add_left(c));
  }
  if (side == Side::Left) return remove_left(c);
  if (side == Side::Right) return remove_right(c);
  if (c.shape->length() < 2) throw Error(ErrorKind::ShapeMismatch, "removing both ends needs two end modules");
  return remove_right(remove_left(c));
}

Cell nat_to_cell(const NatTrans& alpha) {
  const FunctorMap& f = alpha.src;
  const FunctorMap& g = alpha.tgt;
  const FinCat& B = *f.cod;
  auto idB = identity_functor(f.cod);
  auto bf = representable(f, Variance::Covariant);
  auto bg = representable(g, Variance::Covariant);
  auto morph = comma_element_morphisms(*bf, idB, f);
  auto shape = make_shape({bf});
  std::vector<int> values(shape->num_tuples());
  for (int t = 0; t < shape->num_tuples(); ++t) {
    int e = shape->tuples[t][0];
    int a = bf->elem_a(e);
    values[t] = comma_element(*bg, B, bf->elem_b(e), a, B.compose(alpha.components[a], morph[e]));
  }
  return Cell{shape, bg, identity_functor(f.dom), idB, std::move(values)};
}

NatTrans cell_to_nat(const Cell& c, const FunctorMap& f, const FunctorMap& g) {
  auto bf = representable(f, Variance::Covariant);
  auto bg = representable(g, Variance::Covariant);
  if (c.shape->length() != 1 || !(*c.source()[0] == *bf) || !(*c.target == *bg) || !is_identity_functor(c.vf) ||
      !is_identity_functor(c.vg))
    throw Error(ErrorKind::ShapeMismatch, "cell is not a map of covariant representables over identities");
  const FinCat& B = *f.cod;
  auto morph = comma_element_morphisms(*bg, identity_functor(g.cod), g);
  std::vector<int> comps(f.dom->num_objects());
  for (int a = 0; a < f.dom->num_objects(); ++a)
    comps[a] = morph[c.at({comma_element(*bf, B, f.obj(a), a, B.identity(f.obj(a)))})];
  return make_nat(f, g, comps);
}

Cell nat_to_conjoint_cell(const NatTrans& alpha) {
  const FunctorMap& f = alpha.src;
  const FunctorMap& g = alpha.tgt;
  const FinCat& B = *f.cod;
  auto idB = identity_functor(f.cod);
  auto gb = representable(g, Variance::Contravariant);
  auto fb = representable(f, Variance::Contravariant);
  auto morph = comma_element_morphisms(*gb, g, idB);
  auto shape = make_shape({gb});
  std::vector<int> values(shape->num_tuples());
  for (int t = 0; t < shape->num_tuples(); ++t) {
    int e = shape->tuples[t][0];
    int a = gb->elem_b(e);
    values[t] = comma_element(*fb, B, a, gb->elem_a(e), B.compose(morph[e], alpha.components[a]));
  }
  return Cell{shape, fb, idB, identity_functor(f.dom), std::move(values)};
}

NatTrans conjoint_cell_to_nat(const Cell& c, const FunctorMap& f, const FunctorMap& g) {
  auto gb = representable(g, Variance::Contravariant);
  auto fb = representable(f, Variance::Contravariant);
  if (c.shape->length() != 1 || !(*c.source()[0] == *gb) || !(*c.target == *fb) || !is_identity_functor(c.vf) ||
      !is_identity_functor(c.vg))
    throw Error(ErrorKind::ShapeMismatch, "cell is not a map of contravariant representables over identities");
  const FinCat& B = *f.cod;
  auto morph = comma_element_morphisms(*fb, f, identity_functor(f.cod));
  std::vector<int> comps(f.dom->num_objects());
  for (int a = 0; a < f.dom->num_objects(); ++a)
    comps[a] = morph[c.at({comma_element(*gb, B, a, g.obj(a), B.identity(g.obj(a)))})];
  return make_nat(f, g, comps);
}

}  // namespace virteq
