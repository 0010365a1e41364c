#include "virteq/testkit.hpp"

#include <deque>
#include <set>

#include "virteq/catalog.hpp"
#include "virteq/cell.hpp"
#include "virteq/kan.hpp"

namespace virteq::testkit {

// ---------------------------------------------------------------------------
// Generators

std::uint64_t Generator::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int Generator::below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

namespace {

CatRef random_poset(Generator& gen, int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (gen.chance(40)) covers.push_back({i, j});
  return catalog::poset(names, covers);
}

// Free category on a random acyclic multigraph, with all paths of length at
// least 3 between two objects identified.
CatRef random_quotient_free(Generator& gen, int n) {
  struct Edge {
    int src, tgt;
    std::string name;
  };
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int r = gen.below(100);
      int count = r < 55 ? 0 : (r < 85 ? 1 : 2);
      for (int c = 0; c < count; ++c)
        edges.push_back({i, j, std::string(1, static_cast<char>('a' + c)) + std::to_string(i) + std::to_string(j)});
    }

  CategoryBuilder b;
  for (int i = 0; i < n; ++i) b.add_object(std::to_string(i));
  struct Mor {
    int id, src, tgt, len;  // len 3 stands for every longer path
  };
  std::vector<Mor> mors;
  for (const auto& e : edges) mors.push_back({b.add_morphism(e.name, e.src, e.tgt), e.src, e.tgt, 1});
  std::map<std::pair<int, int>, int> path2;  // (second edge, first edge)
  for (std::size_t f = 0; f < edges.size(); ++f)
    for (std::size_t g = 0; g < edges.size(); ++g)
      if (edges[f].tgt == edges[g].src) {
        path2[{static_cast<int>(g), static_cast<int>(f)}] = static_cast<int>(mors.size());
        mors.push_back({b.add_morphism(edges[g].name + "." + edges[f].name, edges[f].src, edges[g].tgt), edges[f].src,
                        edges[g].tgt, 2});
      }
  // reach[s][t]: a path of length >= 1; a path of length >= 3 is a path of
  // length 2 followed by one of length >= 1.
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (const auto& e : edges) reach[e.src][e.tgt] = 1;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][m] && reach[m][j]) reach[i][j] = 1;
  std::map<std::pair<int, int>, int> longs;
  std::size_t num_short = mors.size();
  for (std::size_t p2 = edges.size(); p2 < num_short; ++p2)
    for (int t = 0; t < n; ++t)
      if (reach[mors[p2].tgt][t] && !longs.count({mors[p2].src, t})) {
        longs[{mors[p2].src, t}] = static_cast<int>(mors.size());
        mors.push_back({b.add_morphism("z" + std::to_string(mors[p2].src) + std::to_string(t), mors[p2].src, t),
                        mors[p2].src, t, 3});
      }
  for (std::size_t f = 0; f < mors.size(); ++f)
    for (std::size_t g = 0; g < mors.size(); ++g) {
      if (mors[f].tgt != mors[g].src) continue;
      int result = mors[f].len == 1 && mors[g].len == 1
                       ? mors[path2.at({static_cast<int>(g), static_cast<int>(f)})].id
                       : mors[longs.at({mors[f].src, mors[g].tgt})].id;
      b.set_composite(mors[g].id, mors[f].id, result);
    }
  return b.build().cat;
}

}  // namespace

CatRef Generator::category(int max_objects, GenStyle style) {
  if (max_objects < 1 || max_objects > 5) throw Error(ErrorKind::ValidationError, "max_objects must be in 1..5");
  for (;;) {
    int n = 1 + below(max_objects);
    CatRef c = style == GenStyle::Poset ? random_poset(*this, n) : random_quotient_free(*this, n);
    if (c->num_morphisms() <= kMaxGeneratedMorphisms) return c;
  }
}

std::optional<FunctorMap> Generator::functor(const CatRef& a, const CatRef& b) {
  auto all = enumerate_functors(a, b);
  if (all.empty()) return std::nullopt;
  return all[below(static_cast<int>(all.size()))];
}

ModuleRef Generator::module(const CatRef& a, const CatRef& b) {
  int parts = 1 + below(2);
  std::vector<ModuleRef> out;
  for (int p = 0; p < parts; ++p) {
    CatRef z = category(2);
    auto f = functor(b, z);
    auto g = functor(a, z);
    ModuleRef m = comma_module(*f, *g);
    int r = below(100);
    if (r < 10) {
      m = generated_submodule(m, {});
    } else if (r < 50 && m->num_elements() > 0) {
      std::vector<int> gens;
      for (int e = 0; e < m->num_elements(); ++e)
        if (chance(40)) gens.push_back(e);
      m = generated_submodule(m, gens);
    }
    out.push_back(m);
  }
  return out.size() == 1 ? out[0] : module_coproduct(out);
}

CatRef gen_category(std::uint64_t seed, int max_objects, GenStyle style) {
  Generator gen(seed);
  return gen.category(max_objects, style);
}

GenCospan gen_cospan(Generator& gen, int max_objects) {
  CatRef b = gen.category(max_objects);
  CatRef c = gen.category(max_objects);
  CatRef a = gen.category(max_objects);
  return {*gen.functor(b, a), *gen.functor(c, a)};
}

// ---------------------------------------------------------------------------
// Oracles

NaiveCoend naive_coend(const ModuleRef& e, const ModuleRef& f) {
  if (!same_category(e->cod(), f->dom())) throw Error(ErrorKind::MiddleMismatch, "modules do not compose");
  auto shape = make_shape({e, f});
  const FinCat& M = *e->cod();
  const int n = shape->num_tuples();
  std::vector<std::vector<int>> adj(n);
  for (int x = 0; x < e->num_elements(); ++x)
    for (int beta : M.into(e->elem_b(x)))
      for (int y = 0; y < f->num_elements(); ++y) {
        if (f->elem_a(y) != M.src(beta)) continue;
        int t1 = shape->find({e->right(x, beta), y});
        int t2 = shape->find({x, f->left(beta, y)});
        adj[t1].push_back(t2);
        adj[t2].push_back(t1);
      }
  NaiveCoend out;
  out.class_of.assign(n, -1);
  int next_class = 0;
  for (int t = 0; t < n; ++t) {
    if (out.class_of[t] >= 0) continue;
    std::deque<int> queue{t};
    out.class_of[t] = next_class;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : adj[u])
        if (out.class_of[v] < 0) {
          out.class_of[v] = next_class;
          queue.push_back(v);
        }
    }
    ++out.classes[{shape->last_object(t), shape->first_object(t)}];
    ++next_class;
  }
  return out;
}

namespace {

std::string entry_label(const Module& m, int b, int a) {
  return "(" + m.cod()->object_name(b) + "," + m.dom()->object_name(a) + ")";
}

}  // namespace

std::string check_tensor_against_oracle(const ModuleRef& e, const ModuleRef& f, const Composite& fast) {
  NaiveCoend naive = naive_coend(e, f);
  const Module& T = *fast.module;
  const auto& shape = *fast.cell.shape;
  for (int b = 0; b < T.cod()->num_objects(); ++b)
    for (int a = 0; a < T.dom()->num_objects(); ++a) {
      auto it = naive.classes.find({b, a});
      int expected = it == naive.classes.end() ? 0 : it->second;
      if (T.entry_size(b, a) != expected)
        return "entry " + entry_label(T, b, a) + ": tensor has " + std::to_string(T.entry_size(b, a)) +
               " elements, oracle has " + std::to_string(expected) + " classes";
    }
  std::map<int, int> image_of_class;
  std::map<int, int> class_of_image;
  for (int t = 0; t < shape.num_tuples(); ++t) {
    int cls = naive.class_of[t];
    int v = fast.cell.values[t];
    std::string where = "entry " + entry_label(T, shape.last_object(t), shape.first_object(t));
    auto [it, fresh] = image_of_class.emplace(cls, v);
    if (!fresh && it->second != v) return where + ": identified tuples map to different elements";
    auto [jt, fresh2] = class_of_image.emplace(v, cls);
    if (!fresh2 && jt->second != cls) return where + ": distinct classes map to the same element";
  }
  if (static_cast<int>(class_of_image.size()) != T.num_elements()) return "tensor has elements hit by no tuple";
  return {};
}

std::string check_right_extension(const ModuleRef& k, const ModuleRef& f, const std::vector<ModuleRef>& probes) {
  RightExtension r = right_extension_module(k, f);
  CatRef b = k->cod();
  CatRef c = f->cod();
  auto idA = identity_functor(k->dom());
  auto idB = identity_functor(b);
  Cell id_k = identity_cell(k);

  auto compare = [&](const std::vector<ModuleRef>& gs, const FunctorMap& vg) -> std::string {
    std::vector<ModuleRef> lhs_src{k};
    lhs_src.insert(lhs_src.end(), gs.begin(), gs.end());
    auto lhs = enumerate_cells(make_shape(lhs_src), f, idA, vg);
    std::size_t rhs = count_cells(make_shape(gs, b), r.module, idB, vg);
    std::string label = "probe of length " + std::to_string(gs.size());
    if (lhs.size() != rhs)
      return label + ": " + std::to_string(lhs.size()) + " cells into F, " + std::to_string(rhs) + " into R";
    std::set<std::vector<int>> images;
    for (const Cell& theta : lhs) {
      Cell chi = right_extension_factor(r, theta);
      if (!(substitute_cells(r.counit, {id_k, chi}) == theta)) return label + ": factorization does not recompose";
      images.insert(chi.values);
    }
    if (images.size() != lhs.size()) return label + ": factorization is not injective";
    return {};
  };

  for (const auto& vg : enumerate_functors(b, c))
    if (auto err = compare({}, vg); !err.empty()) return err;
  auto idC = identity_functor(c);
  for (const auto& g : probes)
    if (same_category(g->dom(), b) && same_category(g->cod(), c))
      if (auto err = compare({g}, idC); !err.empty()) return err;
  for (const auto& g1 : probes)
    for (const auto& g2 : probes)
      if (same_category(g1->dom(), b) && same_category(g1->cod(), g2->dom()) && same_category(g2->cod(), c))
        if (auto err = compare({g1, g2}, idC); !err.empty()) return err;
  return {};
}

std::string check_composite_oracle(const Cell& c, const std::vector<ModuleRef>& probe_targets) {
  bool fast = is_composite_cell(c);
  bool universal = true;
  auto idA = identity_functor(c.shape->base);
  auto idC = identity_functor(c.shape->last);
  std::string failure;
  for (const auto& p : probe_targets) {
    if (!same_category(p->dom(), c.target->dom()) || !same_category(p->cod(), c.target->cod())) continue;
    std::size_t direct = count_cells(c.shape, p, idA, idC);
    auto through = enumerate_cells(make_shape({c.target}), p, idA, idC);
    std::set<std::vector<int>> images;
    for (const Cell& phi : through) images.insert(substitute_cells(phi, {c}).values);
    if (images.size() != through.size() || images.size() != direct) {
      universal = false;
      failure = std::to_string(direct) + " cells into the probe, " + std::to_string(images.size()) +
                " distinct factorizations of " + std::to_string(through.size());
      break;
    }
  }
  if (fast != universal)
    return std::string("composite detection says ") + (fast ? "true" : "false") + ", factorization oracle says " +
           (universal ? "true" : "false") + (failure.empty() ? "" : " (" + failure + ")");
  return {};
}

// ---------------------------------------------------------------------------
// Suites

namespace {

// Runs `body` until `size` random instances have been checked. An instance
// whose brute-force side exceeds the enumeration budget is counted as
// skipped and redrawn, up to 3 * size draws in total.
template <class Body>
void draw_instances(SuiteReport& rep, int size, Body&& body) {
  int checked = 0;
  for (int n = 0; checked < size && n < 3 * size; ++n) {
    try {
      body(n);
      ++checked;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EnumerationBudgetExceeded) throw;
      ++rep.skipped;
    }
  }
}

void record(SuiteReport& rep, const std::string& what, const std::string& err) {
  ++rep.instances;
  if (!err.empty() && rep.pass) {
    rep.pass = false;
    rep.counterexample = what + ": " + err;
  }
}

std::vector<ModuleRef> catalog_modules() {
  std::vector<ModuleRef> out;
  for (const auto& c : catalog::small()) out.push_back(hom_module(c.cat));
  for (const auto& nf : catalog::small_functors()) {
    out.push_back(representable(nf.functor, Variance::Covariant));
    out.push_back(representable(nf.functor, Variance::Contravariant));
  }
  return out;
}

}  // namespace

CatRef random_small(Generator& gen) {
  const auto& cats = catalog::small();
  return cats[1 + gen.below(static_cast<int>(cats.size()) - 1)].cat;
}

// Representables between b and c along catalog-sized functors, plus one
// random module.
std::vector<ModuleRef> probes_between(Generator& gen, const CatRef& b, const CatRef& c) {
  std::vector<ModuleRef> out;
  if (same_category(b, c)) out.push_back(hom_module(b));
  if (auto u = gen.functor(b, c)) out.push_back(representable(*u, Variance::Covariant));
  if (auto v = gen.functor(c, b)) out.push_back(representable(*v, Variance::Contravariant));
  if (!same_category(b, c)) {
    out.push_back(hom_module(b));
    out.push_back(hom_module(c));
  }
  out.push_back(gen.module(b, c));
  return out;
}

SuiteReport suite_tensor(const SuiteOptions& opt) {
  SuiteReport rep{"tensor", true, 0, {}};
  auto run = [&](const ModuleRef& e, const ModuleRef& f, const std::string& what) {
    Composite fast = tensor(e, f);
    if (opt.corrupt_tensor) opt.corrupt_tensor(fast);
    record(rep, what, check_tensor_against_oracle(e, f, fast));
  };
  auto mods = catalog_modules();
  for (std::size_t i = 0; i < mods.size(); ++i)
    for (std::size_t j = 0; j < mods.size(); ++j)
      if (same_category(mods[i]->cod(), mods[j]->dom()))
        run(mods[i], mods[j], "catalog pair " + std::to_string(i) + "," + std::to_string(j));
  Generator gen(opt.seed);
  draw_instances(rep, opt.size, [&](int n) {
    CatRef a = gen.category(opt.max_objects), b = gen.category(opt.max_objects), c = gen.category(opt.max_objects);
    run(gen.module(a, b), gen.module(b, c), "random instance " + std::to_string(n));
  });
  return rep;
}

SuiteReport suite_right_extension(const SuiteOptions& opt) {
  SuiteReport rep{"right-extension", true, 0, {}};
  Generator gen(opt.seed ^ 0x2ULL);
  draw_instances(rep, opt.size, [&](int n) {
    CatRef a = random_small(gen), b = random_small(gen), c = random_small(gen);
    ModuleRef k = gen.module(a, b), f = gen.module(a, c);
    record(rep, "random instance " + std::to_string(n), check_right_extension(k, f, probes_between(gen, b, c)));
  });
  return rep;
}

SuiteReport suite_adjunction(const SuiteOptions& opt) {
  SuiteReport rep{"adjunction", true, 0, {}};
  auto run = [&](const FunctorMap& f, const std::string& what) {
    auto fast = find_right_adjoint(f);
    auto slow = right_adjoint_by_triangles(f);
    std::string err;
    if (fast.has_value() != slow.has_value())
      err = std::string("comma search ") + (fast ? "finds" : "misses") + " a right adjoint";
    else if (fast && !(fast->u == slow->u))
      err = "first right adjoints differ";
    record(rep, what, err);
  };
  for (const auto& nf : catalog::small_functors()) run(nf.functor, nf.name);
  Generator gen(opt.seed ^ 0x3ULL);
  draw_instances(rep, opt.size, [&](int n) {
    CatRef a = gen.category(opt.max_objects), b = gen.category(opt.max_objects);
    run(*gen.functor(a, b), "random functor " + std::to_string(n));
  });
  return rep;
}

SuiteReport suite_finality(const SuiteOptions& opt) {
  SuiteReport rep{"finality", true, 0, {}};
  auto run = [&](const FunctorMap& k, const std::string& what) {
    auto bang_a = to_terminal(k.dom);
    auto bang_b = to_terminal(k.cod);
    auto id1 = identity_functor(bang_a.cod);
    bool final_exact = is_exact_square(Square{k, bang_a, bang_b, id1, identity_nat(bang_a)});
    bool initial_exact = is_exact_square(Square{bang_a, k, id1, bang_b, identity_nat(bang_a)});
    bool final_conn = true, initial_conn = true;
    for (int b = 0; b < k.cod->num_objects(); ++b) {
      final_conn = final_conn && count_components(*comma(point(k.cod, b), k).cat) == 1;
      initial_conn = initial_conn && count_components(*comma(k, point(k.cod, b)).cat) == 1;
    }
    std::string err;
    if (final_exact != final_conn) err = "final: exactness and connectivity differ";
    if (initial_exact != initial_conn) err = "initial: exactness and connectivity differ";
    record(rep, what, err);
  };
  for (const auto& nf : catalog::small_functors()) run(nf.functor, nf.name);
  Generator gen(opt.seed ^ 0x4ULL);
  draw_instances(rep, opt.size, [&](int n) {
    CatRef a = gen.category(opt.max_objects), b = gen.category(opt.max_objects);
    run(*gen.functor(a, b), "random functor " + std::to_string(n));
  });
  return rep;
}

SuiteReport suite_composite(const SuiteOptions& opt) {
  SuiteReport rep{"composite", true, 0, {}};
  Generator gen(opt.seed ^ 0x5ULL);
  draw_instances(rep, opt.size, [&](int n) {
    CatRef a = random_small(gen), b = random_small(gen), c = random_small(gen);
    ModuleRef e = gen.module(a, b), f = gen.module(b, c);
    Composite t = tensor(e, f);
    ModuleRef other = gen.module(a, c);
    std::vector<ModuleRef> probes{t.module, other};
    std::string what = "random instance " + std::to_string(n);
    std::string tensor_err = check_composite_oracle(t.cell, probes);
    auto cells = enumerate_cells(make_shape({e, f}), other, identity_functor(a), identity_functor(c));
    std::string pick_err;
    if (!cells.empty()) pick_err = check_composite_oracle(cells[gen.below(static_cast<int>(cells.size()))], probes);
    record(rep, what + " (tensor)", tensor_err);
    if (!cells.empty()) record(rep, what + " (enumerated)", pick_err);
  });
  return rep;
}

std::vector<SuiteReport> run_suites(const SuiteOptions& opt) {
  return {suite_tensor(opt), suite_right_extension(opt), suite_adjunction(opt), suite_finality(opt),
          suite_composite(opt)};
}

}  // namespace virteq::testkit
