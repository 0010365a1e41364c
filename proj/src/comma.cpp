#include "virteq/comma.hpp"

#include <string>

namespace virteq {

int CommaData::object(int c, int b, int alpha) const {
  auto it = object_lookup.find({c, b, alpha});
  if (it == object_lookup.end()) throw Error(ErrorKind::DanglingRef, "no such comma object");
  return it->second;
}

CommaData comma(const FunctorMap& f, const FunctorMap& g) {
  if (!same_category(f.cod, g.cod)) throw Error(ErrorKind::CodomainMismatch, "comma of functors with different codomains");
  const FinCat& A = *f.cod;
  const FinCat& B = *f.dom;
  const FinCat& C = *g.dom;

  CategoryBuilder builder;
  std::map<std::tuple<int, int, int>, int> objs;
  struct Obj {
    int c, b, alpha;
  };
  std::vector<Obj> info;
  for (int c = 0; c < C.num_objects(); ++c)
    for (int b = 0; b < B.num_objects(); ++b)
      for (int alpha : A.hom(f.obj(b), g.obj(c))) {
        int o = builder.add_object("(" + C.object_name(c) + "," + B.object_name(b) + "," + A.morphism_name(alpha) + ")");
        objs.emplace(std::make_tuple(c, b, alpha), o);
        info.push_back({c, b, alpha});
      }

  struct Mor {
    int gamma, beta, src, tgt;
  };
  std::vector<Mor> mors;
  std::map<std::tuple<int, int, int, int>, int> mor_index;  // (gamma, beta, src, tgt) -> builder morphism
  std::vector<std::vector<int>> out_of(info.size());
  for (int o = 0; o < static_cast<int>(info.size()); ++o) {
    const Obj& s = info[o];
    for (int gamma : C.out_of(s.c))
      for (int beta : B.out_of(s.b)) {
        // Targets: every α' with α'∘f(β) = g(γ)∘α.
        int want = A.compose(g.mor(gamma), s.alpha);
        for (int alpha2 : A.hom(f.obj(B.tgt(beta)), g.obj(C.tgt(gamma))))
          if (A.compose(alpha2, f.mor(beta)) == want) {
            int t = objs.at({C.tgt(gamma), B.tgt(beta), alpha2});
            int m;
            if (C.is_identity(gamma) && B.is_identity(beta)) {
              m = builder.identity(o);
            } else {
              m = builder.add_morphism("(" + C.morphism_name(gamma) + "," + B.morphism_name(beta) + "," +
                                           A.morphism_name(s.alpha) + "," + A.morphism_name(alpha2) + ")",
                                       o, t);
            }
            if (static_cast<int>(mors.size()) <= m) mors.resize(m + 1);
            mors[m] = {gamma, beta, o, t};
            mor_index.emplace(std::make_tuple(gamma, beta, o, t), m);
            out_of[o].push_back(m);
          }
      }
  }
  for (int m = 0; m < static_cast<int>(mors.size()); ++m) {
    if (builder.is_identity(m)) continue;
    const Mor& x = mors[m];
    for (int m2 : out_of[x.tgt]) {
      if (builder.is_identity(m2)) continue;
      const Mor& y = mors[m2];
      int gg = C.compose(y.gamma, x.gamma), bb = B.compose(y.beta, x.beta);
      builder.set_composite(m2, m, mor_index.at({gg, bb, x.src, y.tgt}));
    }
  }
  BuiltCategory built = builder.build();

  CommaData out;
  out.cat = built.cat;
  out.f = f;
  out.g = g;
  const int n = out.cat->num_objects();
  const int nm = out.cat->num_morphisms();
  out.p1 = FunctorMap{out.cat, g.dom, std::vector<int>(n), std::vector<int>(nm)};
  out.p0 = FunctorMap{out.cat, f.dom, std::vector<int>(n), std::vector<int>(nm)};
  std::vector<int> comps(n);
  for (int o = 0; o < static_cast<int>(info.size()); ++o) {
    int k = built.object_index[o];
    out.p1.on_obj[k] = info[o].c;
    out.p0.on_obj[k] = info[o].b;
    comps[k] = info[o].alpha;
    out.object_lookup.emplace(std::make_tuple(info[o].c, info[o].b, info[o].alpha), k);
  }
  for (int m = 0; m < static_cast<int>(mors.size()); ++m) {
    int k = built.morphism_index[m];
    out.p1.on_mor[k] = mors[m].gamma;
    out.p0.on_mor[k] = mors[m].beta;
  }
  out.phi = NatTrans{compose(f, out.p0), compose(g, out.p1), std::move(comps)};
  return out;
}

CommaData arrow_category(const CatRef& a) {
  FunctorMap id = identity_functor(a);
  return comma(id, id);
}

FunctorMap induce_one_cell(const FunctorMap& b, const FunctorMap& c, const NatTrans& alpha, const CommaData& target) {
  if (!same_category(b.dom, c.dom) || !same_category(b.cod, target.f.dom) || !same_category(c.cod, target.g.dom))
    throw Error(ErrorKind::BoundaryMismatch, "functors do not match the comma cospan");
  if (!(alpha.src == compose(target.f, b)) || !(alpha.tgt == compose(target.g, c)))
    throw Error(ErrorKind::BoundaryMismatch, "transformation does not have boundary f∘b ⇒ g∘c");
  const FinCat& X = *b.dom;
  const FinCat& K = *target.cat;
  FunctorMap out{b.dom, target.cat, std::vector<int>(X.num_objects()), std::vector<int>(X.num_morphisms())};
  for (int x = 0; x < X.num_objects(); ++x) out.on_obj[x] = target.object(c.obj(x), b.obj(x), alpha.components[x]);
  for (int m = 0; m < X.num_morphisms(); ++m) {
    int found = -1;
    int count = 0;
    for (int k : K.hom(out.on_obj[X.src(m)], out.on_obj[X.tgt(m)]))
      if (target.p1.mor(k) == c.mor(m) && target.p0.mor(k) == b.mor(m)) {
        found = k;
        ++count;
      }
    if (count != 1) throw Error(ErrorKind::BoundaryMismatch, "no unique comma morphism over " + X.morphism_name(m));
    out.on_mor[m] = found;
  }
  FunctorMap checked = make_functor(out.dom, out.cod, out.on_obj, out.on_mor);
  if (!(compose(target.p0, checked) == b) || !(compose(target.p1, checked) == c) ||
      !(whisker(target.phi, checked).components == alpha.components))
    throw Error(ErrorKind::BoundaryMismatch, "induced functor does not reproduce its boundary");
  return checked;
}

}  // namespace virteq
