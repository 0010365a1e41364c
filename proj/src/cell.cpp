#include "virteq/cell.hpp"

#include <set>
#include <tuple>

#include "virteq/kernels.hpp"

namespace virteq {

int SourceShape::object_at(int t, int i) const {
  const auto& tup = tuples[t];
  if (modules.empty()) return tup[0];
  if (i == 0) return modules[0]->elem_a(tup[0]);
  return modules[i - 1]->elem_b(tup[i - 1]);
}

int SourceShape::find(const std::vector<int>& tuple) const {
  auto it = lookup.find(tuple);
  if (it == lookup.end()) throw Error(ErrorKind::DanglingRef, "tuple is not in the cell source");
  return it->second;
}

ShapeRef make_shape(const std::vector<ModuleRef>& modules, const CatRef& base) {
  auto s = std::make_shared<SourceShape>();
  s->modules = modules;
  if (modules.empty()) {
    if (!base) throw Error(ErrorKind::BoundaryMismatch, "empty source needs a base category");
    s->base = base;
    s->last = base;
    for (int a = 0; a < base->num_objects(); ++a) {
      s->lookup.emplace(std::vector<int>{a}, a);
      s->tuples.push_back({a});
    }
    return s;
  }
  for (std::size_t i = 0; i + 1 < modules.size(); ++i)
    if (!same_category(modules[i]->cod(), modules[i + 1]->dom()))
      throw Error(ErrorKind::BoundaryMismatch, "source modules " + std::to_string(i + 1) + " and " +
                                                   std::to_string(i + 2) + " do not compose");
  s->base = modules.front()->dom();
  s->last = modules.back()->cod();
  Budget budget("cell source tuples");
  const int n = static_cast<int>(modules.size());
  std::vector<int> cur(n);
  std::function<void(int)> dfs = [&](int i) {
    if (i == n) {
      budget.tick();
      s->lookup.emplace(cur, static_cast<int>(s->tuples.size()));
      s->tuples.push_back(cur);
      return;
    }
    const Module& M = *modules[i];
    if (i == 0) {
      for (int e = 0; e < M.num_elements(); ++e) {
        cur[0] = e;
        dfs(1);
      }
      return;
    }
    int x = modules[i - 1]->elem_b(cur[i - 1]);
    for (int b = 0; b < M.cod()->num_objects(); ++b)
      for (int e : M.entry(b, x)) {
        cur[i] = e;
        dfs(i + 1);
      }
  };
  dfs(0);
  return s;
}

bool same_shape(const SourceShape& x, const SourceShape& y) {
  if (x.modules.size() != y.modules.size()) return false;
  for (std::size_t i = 0; i < x.modules.size(); ++i)
    if (!same_module(x.modules[i], y.modules[i])) return false;
  return same_category(x.base, y.base);
}

bool operator==(const Cell& x, const Cell& y) {
  return x.values == y.values && same_shape(*x.shape, *y.shape) && same_module(x.target, y.target) && x.vf == y.vf &&
         x.vg == y.vg;
}

std::vector<std::pair<int, int>> middle_edges(const SourceShape& shape) {
  std::vector<std::pair<int, int>> out;
  const int n = shape.length();
  for (int t = 0; t < shape.num_tuples(); ++t) {
    const auto& tup = shape.tuples[t];
    for (int i = 1; i < n; ++i) {
      const Module& L = *shape.modules[i - 1];
      const Module& R = *shape.modules[i];
      const FinCat& M = *L.cod();
      int x = L.elem_b(tup[i - 1]);
      for (int beta : M.out_of(x)) {
        if (M.is_identity(beta)) continue;
        int moved = R.left(beta, tup[i]);
        for (int u : L.right_preimage(tup[i - 1], beta)) {
          std::vector<int> other = tup;
          other[i - 1] = u;
          other[i] = moved;
          out.emplace_back(t, shape.find(other));
        }
      }
    }
  }
  return out;
}

std::vector<CellConstraint> cell_constraints(const SourceShape& shape, const FunctorMap& vf, const FunctorMap& vg) {
  std::vector<CellConstraint> out;
  const int n = shape.length();
  if (n == 0) {
    const FinCat& A = *shape.base;
    for (int alpha = 0; alpha < A.num_morphisms(); ++alpha) {
      if (A.is_identity(alpha)) continue;
      out.push_back({A.src(alpha), vf.mor(alpha), -1, A.tgt(alpha), -1, vg.mor(alpha)});
    }
    return out;
  }
  const Module& first = *shape.modules.front();
  const Module& last = *shape.modules.back();
  for (int t = 0; t < shape.num_tuples(); ++t) {
    const auto& tup = shape.tuples[t];
    for (int alpha : first.dom()->out_of(first.elem_a(tup[0]))) {
      if (first.dom()->is_identity(alpha)) continue;
      std::vector<int> other = tup;
      other[0] = first.left(alpha, tup[0]);
      out.push_back({shape.find(other), -1, -1, t, vf.mor(alpha), -1});
    }
    for (int beta : last.cod()->into(last.elem_b(tup[n - 1]))) {
      if (last.cod()->is_identity(beta)) continue;
      std::vector<int> other = tup;
      other[n - 1] = last.right(tup[n - 1], beta);
      out.push_back({shape.find(other), -1, -1, t, -1, vg.mor(beta)});
    }
  }
  for (auto [t1, t2] : middle_edges(shape)) out.push_back({t1, -1, -1, t2, -1, -1});
  return out;
}

namespace {

int act(const Module& F, int l, int v, int r) {
  if (r >= 0) v = F.right(v, r);
  if (l >= 0) v = F.left(l, v);
  return v;
}

void check_boundary(const SourceShape& shape, const ModuleRef& target, const FunctorMap& vf, const FunctorMap& vg) {
  if (!same_category(vf.dom, shape.base) || !same_category(vf.cod, target->dom()))
    throw Error(ErrorKind::BoundaryMismatch, "left vertical functor does not match the cell boundary");
  if (!same_category(vg.dom, shape.last) || !same_category(vg.cod, target->cod()))
    throw Error(ErrorKind::BoundaryMismatch, "right vertical functor does not match the cell boundary");
}

std::string tuple_label(const SourceShape& shape, int t) {
  const auto& tup = shape.tuples[t];
  if (shape.modules.empty()) return shape.base->object_name(tup[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < tup.size(); ++i) {
    if (i) s += ",";
    s += shape.modules[i]->element_name(tup[i]);
  }
  return s + ")";
}

}  // namespace

void validate_cell(const Cell& c) {
  const SourceShape& shape = *c.shape;
  check_boundary(shape, c.target, c.vf, c.vg);
  const Module& F = *c.target;
  if (static_cast<int>(c.values.size()) != shape.num_tuples())
    throw Error(ErrorKind::BoundaryMismatch, "cell has " + std::to_string(c.values.size()) + " components for " +
                                                 std::to_string(shape.num_tuples()) + " source tuples");
  for (int t = 0; t < shape.num_tuples(); ++t) {
    int v = c.values[t];
    if (v < 0 || v >= F.num_elements() || F.elem_b(v) != c.vg.obj(shape.last_object(t)) ||
        F.elem_a(v) != c.vf.obj(shape.first_object(t)))
      throw Error(ErrorKind::BoundaryMismatch, "component at " + tuple_label(shape, t) + " is not in the right entry");
  }
  for (const auto& k : cell_constraints(shape, c.vf, c.vg))
    if (act(F, k.l1, c.values[k.t1], k.r1) != act(F, k.l2, c.values[k.t2], k.r2))
      throw Error(ErrorKind::NaturalityViolation,
                  "components at " + tuple_label(shape, k.t1) + " and " + tuple_label(shape, k.t2) + " disagree");
}

Cell make_cell(ShapeRef shape, ModuleRef target, FunctorMap vf, FunctorMap vg, std::vector<int> values) {
  Cell c{std::move(shape), std::move(target), std::move(vf), std::move(vg), std::move(values)};
  validate_cell(c);
  return c;
}

Cell make_cell(ShapeRef shape, ModuleRef target, FunctorMap vf, FunctorMap vg,
               const std::function<int(const std::vector<int>& tuple)>& value) {
  std::vector<int> values;
  values.reserve(shape->num_tuples());
  for (const auto& t : shape->tuples) values.push_back(value(t));
  return make_cell(std::move(shape), std::move(target), std::move(vf), std::move(vg), std::move(values));
}

std::vector<Cell> enumerate_cells(const ShapeRef& shape, const ModuleRef& target, const FunctorMap& vf,
                                  const FunctorMap& vg) {
  check_boundary(*shape, target, vf, vg);
  const Module& F = *target;
  kernels::Csp csp;
  for (int t = 0; t < shape->num_tuples(); ++t) {
    auto dom = F.entry(vg.obj(shape->last_object(t)), vf.obj(shape->first_object(t)));
    csp.add_var(std::vector<int>(dom.begin(), dom.end()));
  }
  for (const auto& k : cell_constraints(*shape, vf, vg)) {
    int scope[2] = {k.t1, k.t2};
    csp.add_check(scope, [&F, k](const int* x) { return act(F, k.l1, x[k.t1], k.r1) == act(F, k.l2, x[k.t2], k.r2); });
  }
  Budget budget("enumerate_cells");
  std::vector<Cell> out;
  for (auto& values : kernels::omp::solve(csp, budget)) out.push_back(Cell{shape, target, vf, vg, std::move(values)});
  return out;
}

std::size_t count_cells(const ShapeRef& shape, const ModuleRef& target, const FunctorMap& vf, const FunctorMap& vg) {
  return enumerate_cells(shape, target, vf, vg).size();
}

Cell identity_cell(const ModuleRef& e) {
  auto shape = make_shape({e});
  std::vector<int> values;
  for (const auto& t : shape->tuples) values.push_back(t[0]);
  return Cell{shape, e, identity_functor(e->dom()), identity_functor(e->cod()), std::move(values)};
}

Cell substitute_cells(const Cell& outer, const std::vector<Cell>& inners) {
  const int m = outer.shape->length();
  if (static_cast<int>(inners.size()) != m)
    throw Error(ErrorKind::BoundaryMismatch, "substitution needs " + std::to_string(m) + " inner cells, got " +
                                                 std::to_string(inners.size()));
  if (m == 0) return outer;
  for (int j = 0; j < m; ++j)
    if (!same_module(inners[j].target, outer.source()[j]))
      throw Error(ErrorKind::BoundaryMismatch, "inner cell " + std::to_string(j + 1) + " does not land in source module " +
                                                   std::to_string(j + 1));
  for (int j = 0; j + 1 < m; ++j)
    if (!(inners[j].vg == inners[j + 1].vf))
      throw Error(ErrorKind::BoundaryMismatch, "vertical boundaries of inner cells " + std::to_string(j + 1) + " and " +
                                                   std::to_string(j + 2) + " differ");
  std::vector<ModuleRef> modules;
  for (const auto& c : inners) modules.insert(modules.end(), c.source().begin(), c.source().end());
  auto shape = make_shape(modules, inners.front().shape->base);
  std::vector<int> values(shape->num_tuples());
  std::vector<int> outer_tuple(m);
  std::vector<int> inner_tuple;
  for (int t = 0; t < shape->num_tuples(); ++t) {
    const auto& tup = shape->tuples[t];
    int pos = 0;
    for (int j = 0; j < m; ++j) {
      int nj = inners[j].shape->length();
      if (nj == 0) {
        inner_tuple.assign(1, shape->object_at(t, pos));
      } else {
        inner_tuple.assign(tup.begin() + pos, tup.begin() + pos + nj);
      }
      pos += nj;
      outer_tuple[j] = inners[j].at(inner_tuple);
    }
    values[t] = outer.at(outer_tuple);
  }
  return Cell{shape, outer.target, compose(outer.vf, inners.front().vf), compose(outer.vg, inners.back().vg),
              std::move(values)};
}

Cell vertical(const Cell& second, const Cell& first) { return substitute_cells(second, {first}); }

Cell whisker_nullary(const Cell& c, const FunctorMap& f) {
  if (c.shape->length() != 0) throw Error(ErrorKind::ShapeMismatch, "whiskering needs a nullary cell");
  if (!same_category(f.cod, c.shape->base)) throw Error(ErrorKind::BoundaryMismatch, "functor does not land in the cell base");
  auto shape = make_shape({}, f.dom);
  std::vector<int> values(shape->num_tuples());
  for (int x = 0; x < shape->num_tuples(); ++x) values[x] = c.values[f.obj(x)];
  return Cell{shape, c.target, compose(c.vf, f), compose(c.vg, f), std::move(values)};
}

RestrictionData restrict_module_data(const ModuleRef& em, const FunctorMap& a, const FunctorMap& b) {
  const Module& E = *em;
  if (!same_category(a.cod, E.dom()) || !same_category(b.cod, E.cod()))
    throw Error(ErrorKind::BoundaryMismatch, "restriction functors do not land in the module boundary");
  const FinCat& A2 = *a.dom;
  const FinCat& B2 = *b.dom;
  auto injective = [](const std::vector<int>& v) { return std::set<int>(v.begin(), v.end()).size() == v.size(); };
  const bool plain = injective(a.on_obj) && injective(b.on_obj);

  ModuleBuilder mb(a.dom, b.dom);
  std::map<std::tuple<int, int, int>, int> raw;
  std::vector<int> orig;
  for (int y = 0; y < B2.num_objects(); ++y)
    for (int x = 0; x < A2.num_objects(); ++x)
      for (int e : E.entry(b.obj(y), a.obj(x))) {
        std::string name = plain ? E.element_name(e)
                                 : E.element_name(e) + "@(" + B2.object_name(y) + "," + A2.object_name(x) + ")";
        raw.emplace(std::make_tuple(y, x, e), mb.add_element(y, x, std::move(name)));
        orig.push_back(e);
      }
  for (const auto& [key, id] : raw) {
    auto [y, x, e] = key;
    for (int alpha : A2.out_of(x)) mb.set_left(alpha, id, raw.at({y, A2.tgt(alpha), E.left(a.mor(alpha), e)}));
    for (int beta : B2.into(y)) mb.set_right(id, beta, raw.at({B2.src(beta), x, E.right(e, b.mor(beta))}));
  }
  auto built = mb.build_indexed();
  RestrictionData r;
  r.module = built.module;
  r.a = a;
  r.b = b;
  for (const auto& [key, id] : raw) r.element_of.emplace(key, built.element_index[id]);
  std::vector<int> by_canonical(orig.size());
  for (std::size_t i = 0; i < orig.size(); ++i) by_canonical[built.element_index[i]] = orig[i];
  auto shape = make_shape({r.module});
  std::vector<int> values(shape->num_tuples());
  for (int t = 0; t < shape->num_tuples(); ++t) values[t] = by_canonical[shape->tuples[t][0]];
  r.cell = std::make_shared<Cell>(Cell{shape, em, a, b, std::move(values)});
  return r;
}

Restriction restrict_module(const ModuleRef& e, const FunctorMap& a, const FunctorMap& b) {
  auto r = restrict_module_data(e, a, b);
  return Restriction{r.module, r.cell};
}

Cell factor_through_restriction(const Cell& c, const RestrictionData& r, const FunctorMap& f_prime,
                                const FunctorMap& g_prime) {
  if (!same_module(c.target, r.cell->target) || !(compose(r.a, f_prime) == c.vf) || !(compose(r.b, g_prime) == c.vg))
    throw Error(ErrorKind::BoundaryMismatch, "cell boundary does not factor through the restriction");
  std::vector<int> values(c.values.size());
  for (int t = 0; t < c.shape->num_tuples(); ++t)
    values[t] = r.element_of.at({g_prime.obj(c.shape->last_object(t)), f_prime.obj(c.shape->first_object(t)), c.values[t]});
  return Cell{c.shape, r.module, f_prime, g_prime, std::move(values)};
}

}  // namespace virteq
