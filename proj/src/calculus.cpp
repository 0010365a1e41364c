#include "virteq/calculus.hpp"

#include "virteq/kernels.hpp"

namespace virteq {

namespace {

std::string tuple_name(const std::vector<ModuleRef>& modules, const std::vector<int>& tup) {
  std::string s = "(";
  for (std::size_t i = 0; i < tup.size(); ++i) {
    if (i) s += ",";
    s += modules[i]->element_name(tup[i]);
  }
  return s + ")";
}

Cell unit_cell_of(const ModuleRef& hom) {
  const FinCat& A = *hom->dom();
  auto shape = make_shape({}, hom->dom());
  std::vector<int> values(A.num_objects());
  for (int a = 0; a < A.num_objects(); ++a) values[a] = hom_element(*hom, A.identity(a));
  return Cell{shape, hom, identity_functor(hom->dom()), identity_functor(hom->dom()), std::move(values)};
}

}  // namespace

Composite tensor_many(const std::vector<ModuleRef>& modules, const CatRef& base, Exec exec) {
  if (modules.empty()) {
    if (!base) throw Error(ErrorKind::BoundaryMismatch, "empty tensor needs a base category");
    auto hom = hom_module(base);
    return Composite{hom, unit_cell_of(hom)};
  }
  for (std::size_t i = 0; i + 1 < modules.size(); ++i)
    if (!same_category(modules[i]->cod(), modules[i + 1]->dom()))
      throw Error(ErrorKind::MiddleMismatch, "modules " + std::to_string(i + 1) + " and " + std::to_string(i + 2) +
                                                 " do not share a middle category");
  if (modules.size() == 1) return Composite{modules[0], identity_cell(modules[0])};

  auto shape = make_shape(modules);
  const FinCat& A0 = *shape->base;
  const FinCat& An = *shape->last;
  const int n = shape->length();
  const int na = A0.num_objects();
  const int entries = na * An.num_objects();

  std::vector<kernels::CoendEntry> parts(entries);
  std::vector<int> entry_of(shape->num_tuples()), local(shape->num_tuples());
  std::vector<std::vector<int>> members(entries);
  for (int t = 0; t < shape->num_tuples(); ++t) {
    int k = shape->last_object(t) * na + shape->first_object(t);
    entry_of[t] = k;
    local[t] = parts[k].size++;
    members[k].push_back(t);
  }
  for (auto [t1, t2] : middle_edges(*shape)) parts[entry_of[t1]].edges.emplace_back(local[t1], local[t2]);
  auto roots = exec == Exec::Parallel ? kernels::omp::coend_classes(parts) : kernels::serial::coend_classes(parts);

  ModuleBuilder mb(shape->base, shape->last);
  std::vector<int> class_of(shape->num_tuples(), -1);
  std::vector<int> reps;  // builder element -> representative tuple
  for (int t = 0; t < shape->num_tuples(); ++t) {
    int root = members[entry_of[t]][roots[entry_of[t]][local[t]]];
    if (root == t) {
      class_of[t] = mb.add_element(shape->last_object(t), shape->first_object(t), tuple_name(modules, shape->tuples[t]));
      reps.push_back(t);
    } else {
      class_of[t] = class_of[root];
    }
  }
  const Module& first = *modules.front();
  const Module& last = *modules.back();
  for (int id = 0; id < static_cast<int>(reps.size()); ++id) {
    const auto& tup = shape->tuples[reps[id]];
    for (int alpha : A0.out_of(first.elem_a(tup[0]))) {
      std::vector<int> other = tup;
      other[0] = first.left(alpha, tup[0]);
      mb.set_left(alpha, id, class_of[shape->find(other)]);
    }
    for (int beta : An.into(last.elem_b(tup[n - 1]))) {
      std::vector<int> other = tup;
      other[n - 1] = last.right(tup[n - 1], beta);
      mb.set_right(id, beta, class_of[shape->find(other)]);
    }
  }
  auto built = mb.build_indexed();
  std::vector<int> values(shape->num_tuples());
  for (int t = 0; t < shape->num_tuples(); ++t) values[t] = built.element_index[class_of[t]];
  Cell cell{shape, built.module, identity_functor(shape->base), identity_functor(shape->last), std::move(values)};
  return Composite{built.module, std::move(cell)};
}

Composite tensor(const ModuleRef& e, const ModuleRef& f, Exec exec) {
  if (!same_category(e->cod(), f->dom())) throw Error(ErrorKind::MiddleMismatch, "tensor of non-composable modules");
  return tensor_many({e, f}, nullptr, exec);
}

RightExtension right_extension_module(const ModuleRef& km, const ModuleRef& fm, Exec exec) {
  if (!same_category(km->dom(), fm->dom()))
    throw Error(ErrorKind::DomainMismatch, "right extension of modules with different domains");
  const Module& K = *km;
  const Module& F = *fm;
  const FinCat& A = *K.dom();
  const FinCat& B = *K.cod();
  const FinCat& C = *F.cod();
  RightExtension r;
  r.k = km;
  r.f = fm;
  r.rows.assign(B.num_objects(), {});
  r.row_pos.assign(K.num_elements(), -1);
  for (int x = 0; x < K.num_elements(); ++x) {
    r.row_pos[x] = static_cast<int>(r.rows[K.elem_b(x)].size());
    r.rows[K.elem_b(x)].push_back(x);
  }

  std::vector<kernels::Csp> csps;
  std::vector<std::pair<int, int>> keys;  // (c, b)
  for (int c = 0; c < C.num_objects(); ++c)
    for (int b = 0; b < B.num_objects(); ++b) {
      kernels::Csp csp;
      const auto& row = r.rows[b];
      for (int x : row) {
        auto dom = F.entry(c, K.elem_a(x));
        csp.add_var(std::vector<int>(dom.begin(), dom.end()));
      }
      for (int i = 0; i < static_cast<int>(row.size()); ++i)
        for (int alpha : A.out_of(K.elem_a(row[i]))) {
          if (A.is_identity(alpha)) continue;
          int j = r.row_pos[K.left(alpha, row[i])];
          int scope[2] = {i, j};
          csp.add_check(scope, [&F, alpha, i, j](const int* v) { return v[j] == F.left(alpha, v[i]); });
        }
      csps.push_back(std::move(csp));
      keys.emplace_back(c, b);
    }
  Budget budget("right_extension_module");
  auto sols = exec == Exec::Parallel ? kernels::omp::end_families(csps, budget)
                                     : kernels::serial::end_families(csps, budget);

  ModuleBuilder mb(K.cod(), F.cod());
  std::map<std::vector<int>, int> raw_index;
  std::vector<std::vector<int>> raw_family;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    auto [c, b] = keys[k];
    for (auto& fam : sols[k]) {
      std::string name = "[" + C.object_name(c) + "," + B.object_name(b) + "]{";
      const auto& row = r.rows[b];
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) name += ",";
        name += K.element_name(row[i]) + ">" + F.element_name(fam[i]);
      }
      name += "}";
      std::vector<int> key{c, b};
      key.insert(key.end(), fam.begin(), fam.end());
      raw_index.emplace(key, mb.add_element(c, b, std::move(name)));
      raw_family.push_back(std::move(fam));
    }
  }
  auto lookup = [&](std::vector<int> key) {
    auto it = raw_index.find(key);
    if (it == raw_index.end()) throw Error(ErrorKind::OracleDisagreement, "right extension action leaves the end");
    return it->second;
  };
  for (const auto& [key, id] : raw_index) {
    int c = key[0], b = key[1];
    const auto& fam = raw_family[id];
    for (int beta : B.out_of(b)) {
      int b2 = B.tgt(beta);
      std::vector<int> nk{c, b2};
      for (int x2 : r.rows[b2]) nk.push_back(fam[r.row_pos[K.right(x2, beta)]]);
      mb.set_left(beta, id, lookup(nk));
    }
    for (int gamma : C.into(c)) {
      std::vector<int> nk{C.src(gamma), b};
      for (int v : fam) nk.push_back(F.right(v, gamma));
      mb.set_right(id, gamma, lookup(nk));
    }
  }
  auto built = mb.build_indexed();
  r.module = built.module;
  r.family.assign(raw_family.size(), {});
  for (const auto& [key, id] : raw_index) {
    int e = built.element_index[id];
    r.family[e] = raw_family[id];
    r.by_family.emplace(key, e);
  }
  auto shape = make_shape({km, r.module});
  std::vector<int> values(shape->num_tuples());
  for (int t = 0; t < shape->num_tuples(); ++t) {
    int x = shape->tuples[t][0], eta = shape->tuples[t][1];
    values[t] = r.family[eta][r.row_pos[x]];
  }
  r.counit = Cell{shape, fm, identity_functor(K.dom()), identity_functor(F.cod()), std::move(values)};
  return r;
}

Cell right_extension_factor(const RightExtension& r, const Cell& theta) {
  const auto& src = theta.source();
  if (src.empty() || !same_module(src[0], r.k) || !same_module(theta.target, r.f) || !is_identity_functor(theta.vf))
    throw Error(ErrorKind::BoundaryMismatch, "cell does not start with the extended module over an identity");
  std::vector<ModuleRef> rest(src.begin() + 1, src.end());
  auto shape = make_shape(rest, r.k->cod());
  const FunctorMap& vg = theta.vg;
  std::vector<int> values(shape->num_tuples());
  std::vector<int> tup;
  for (int t = 0; t < shape->num_tuples(); ++t) {
    int b = shape->first_object(t);
    int c = vg.obj(shape->last_object(t));
    std::vector<int> key{c, b};
    for (int x : r.rows[b]) {
      tup.assign(1, x);
      if (!rest.empty()) tup.insert(tup.end(), shape->tuples[t].begin(), shape->tuples[t].end());
      key.push_back(theta.at(tup));
    }
    auto it = r.by_family.find(key);
    if (it == r.by_family.end())
      throw Error(ErrorKind::NaturalityViolation, "cell components do not form a natural family");
    values[t] = it->second;
  }
  return Cell{shape, r.module, identity_functor(r.k->cod()), vg, std::move(values)};
}

CompositeReport composite_report(const Cell& c) {
  if (!is_identity_functor(c.vf) || !is_identity_functor(c.vg))
    throw Error(ErrorKind::NonIdentityBoundary, "composite check needs identity vertical functors");
  const Module& F = *c.target;
  auto comp = tensor_many(c.source(), c.shape->base);
  const Module& T = *comp.module;
  std::vector<int> map(T.num_elements(), -1);
  if (c.shape->length() == 0) {
    const FinCat& A = *c.shape->base;
    for (int alpha = 0; alpha < A.num_morphisms(); ++alpha)
      map[hom_element(T, alpha)] = F.left(alpha, c.values[A.src(alpha)]);
  } else {
    for (int t = 0; t < c.shape->num_tuples(); ++t) {
      int cls = comp.cell.values[t];
      if (map[cls] >= 0 && map[cls] != c.values[t])
        throw Error(ErrorKind::NaturalityViolation, "cell is not constant on a tensor class");
      map[cls] = c.values[t];
    }
  }
  CompositeReport rep;
  const FinCat& A0 = *T.dom();
  const FinCat& An = *T.cod();
  for (int b = 0; b < An.num_objects(); ++b)
    for (int a = 0; a < A0.num_objects(); ++a) {
      int ts = T.entry_size(b, a), fs = F.entry_size(b, a);
      std::vector<char> hit(F.num_elements(), 0);
      bool bij = ts == fs;
      for (int x : T.entry(b, a)) {
        if (hit[map[x]]) bij = false;
        hit[map[x]] = 1;
      }
      if (!bij) {
        rep.ok = false;
        rep.b = b;
        rep.a = a;
        rep.tensor_size = ts;
        rep.target_size = fs;
        rep.witness = "entry (" + An.object_name(b) + "," + A0.object_name(a) + "): tensor has " + std::to_string(ts) +
                      " elements, target has " + std::to_string(fs);
        if (ts == fs) rep.witness += " but the comparison is not injective";
        return rep;
      }
    }
  return rep;
}

bool is_composite_cell(const Cell& c) { return composite_report(c).ok; }

Cell action_cell(const ModuleRef& em, bool with_left, bool with_right) {
  const Module& E = *em;
  std::vector<ModuleRef> modules;
  ModuleRef ha, hb;
  if (with_left) modules.push_back(ha = hom_module(E.dom()));
  modules.push_back(em);
  if (with_right) modules.push_back(hb = hom_module(E.cod()));
  auto shape = make_shape(modules);
  auto morphism_of = [](const ModuleRef& hom) {
    std::vector<int> out(hom ? hom->num_elements() : 0);
    if (hom)
      for (int m = 0; m < hom->dom()->num_morphisms(); ++m) out[hom_element(*hom, m)] = m;
    return out;
  };
  const auto alpha_of = morphism_of(ha);
  const auto beta_of = morphism_of(hb);
  const int mid = with_left ? 1 : 0;
  std::vector<int> values(shape->num_tuples());
  for (int t = 0; t < shape->num_tuples(); ++t) {
    const auto& tup = shape->tuples[t];
    int v = tup[mid];
    if (with_right) v = E.right(v, beta_of[tup[mid + 1]]);
    if (with_left) v = E.left(alpha_of[tup[0]], v);
    values[t] = v;
  }
  return Cell{shape, em, identity_functor(E.dom()), identity_functor(E.cod()), std::move(values)};
}

bool is_entrywise_iso(const Cell& c) {
  if (c.shape->length() != 1) throw Error(ErrorKind::ShapeMismatch, "entrywise iso needs a unary cell");
  if (!is_identity_functor(c.vf) || !is_identity_functor(c.vg))
    throw Error(ErrorKind::NonIdentityBoundary, "entrywise iso needs identity vertical functors");
  const Module& E = *c.source()[0];
  const Module& F = *c.target;
  if (E.num_elements() != F.num_elements()) return false;
  std::vector<char> hit(F.num_elements(), 0);
  for (int t = 0; t < c.shape->num_tuples(); ++t) {
    if (hit[c.values[t]]) return false;
    hit[c.values[t]] = 1;
  }
  return true;
}

}  // namespace virteq
