#include "virteq/fincat.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "virteq/kernels.hpp"
#include "virteq/union_find.hpp"

namespace virteq {

namespace {

void check_name(const std::string& name, const char* what) {
  if (name.empty()) throw Error(ErrorKind::ValidationError, std::string("empty ") + what + " name");
  if (name.find('|') != std::string::npos)
    throw Error(ErrorKind::ValidationError, std::string(what) + " name '" + name + "' contains '|'");
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string tuple_name(const std::vector<std::string>& parts) { return "(" + join(parts, ",") + ")"; }

// Calls visit(parts) for every tuple in the product of `choices`.
template <typename Visit>
void for_each_tuple(const std::vector<std::vector<int>>& choices, Visit&& visit) {
  for (const auto& c : choices)
    if (c.empty()) return;
  std::vector<std::size_t> pos(choices.size(), 0);
  std::vector<int> parts(choices.size());
  while (true) {
    for (std::size_t i = 0; i < choices.size(); ++i) parts[i] = choices[i][pos[i]];
    visit(parts);
    std::size_t i = choices.size();
    while (i > 0) {
      --i;
      if (++pos[i] < choices[i].size()) break;
      pos[i] = 0;
      if (i == 0) return;
    }
    if (choices.empty()) return;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// FinCat

std::span<const int> FinCat::hom(int x, int y) const {
  const auto& out = out_[x];
  auto lo = std::lower_bound(out.begin(), out.end(), y,
                             [this](int m, int t) { return morphisms_[m].tgt < t; });
  auto hi = std::upper_bound(lo, out.end(), y,
                             [this](int t, int m) { return t < morphisms_[m].tgt; });
  return std::span<const int>(out.data() + (lo - out.begin()), static_cast<std::size_t>(hi - lo));
}

std::optional<int> FinCat::find_object(std::string_view name) const {
  auto it = obj_index_.find(std::string(name));
  if (it == obj_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FinCat::find_morphism(std::string_view name) const {
  auto it = mor_index_.find(std::string(name));
  if (it == mor_index_.end()) return std::nullopt;
  return it->second;
}

int FinCat::object_index(std::string_view name) const {
  auto o = find_object(name);
  if (!o) throw Error(ErrorKind::DanglingRef, "unknown object '" + std::string(name) + "'");
  return *o;
}

int FinCat::morphism_index(std::string_view name) const {
  auto m = find_morphism(name);
  if (!m) throw Error(ErrorKind::DanglingRef, "unknown morphism '" + std::string(name) + "'");
  return *m;
}

bool operator==(const FinCat& a, const FinCat& b) {
  if (a.objects_ != b.objects_) return false;
  if (a.morphisms_.size() != b.morphisms_.size()) return false;
  for (std::size_t i = 0; i < a.morphisms_.size(); ++i) {
    const auto& x = a.morphisms_[i];
    const auto& y = b.morphisms_[i];
    if (x.name != y.name || x.src != y.src || x.tgt != y.tgt) return false;
  }
  return a.after_ == b.after_;
}

bool same_category(const CatRef& a, const CatRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ---------------------------------------------------------------------------
// CategoryBuilder

int CategoryBuilder::add_object(std::string name) {
  int o = num_objects();
  objects_.push_back(name);
  int id = num_morphisms();
  morphisms_.push_back(MorphismInfo{"id:" + name, o, o});
  is_identity_.push_back(1);
  identities_.push_back(id);
  return o;
}

int CategoryBuilder::add_morphism(std::string name, int src, int tgt) {
  if (src < 0 || src >= num_objects() || tgt < 0 || tgt >= num_objects())
    throw Error(ErrorKind::DanglingRef, "morphism '" + name + "' has an unknown endpoint");
  morphisms_.push_back(MorphismInfo{std::move(name), src, tgt});
  is_identity_.push_back(0);
  return num_morphisms() - 1;
}

void CategoryBuilder::set_composite(int second, int first, int result) {
  int m = num_morphisms();
  if (second < 0 || second >= m || first < 0 || first >= m || result < 0 || result >= m)
    throw Error(ErrorKind::DanglingRef, "composite refers to an unknown morphism");
  auto [it, inserted] = comp_.emplace(std::make_pair(second, first), result);
  if (!inserted && it->second != result)
    throw Error(ErrorKind::ValidationError, "conflicting composites declared for " +
                                                morphisms_[second].name + " after " +
                                                morphisms_[first].name);
}

BuiltCategory CategoryBuilder::build() const {
  const int n = num_objects();
  const int m = num_morphisms();

  {
    std::unordered_set<std::string> seen;
    for (const auto& o : objects_) {
      check_name(o, "object");
      if (!seen.insert(o).second) throw Error(ErrorKind::DuplicateName, "object '" + o + "'");
    }
    seen.clear();
    for (const auto& mi : morphisms_) {
      check_name(mi.name, "morphism");
      if (!seen.insert(mi.name).second)
        throw Error(ErrorKind::DuplicateName, "morphism '" + mi.name + "'");
    }
  }

  auto nm = [this](int f) -> const std::string& { return morphisms_[f].name; };

  for (const auto& [key, r] : comp_) {
    auto [g, f] = key;
    if (morphisms_[f].tgt != morphisms_[g].src)
      throw Error(ErrorKind::NotComposable, nm(g) + " after " + nm(f));
    if (morphisms_[r].src != morphisms_[f].src || morphisms_[r].tgt != morphisms_[g].tgt)
      throw Error(ErrorKind::TypeMismatch,
                  "declared composite " + nm(g) + " after " + nm(f) + " = " + nm(r) + " has the wrong type");
    if (is_identity(f) && r != g)
      throw Error(ErrorKind::IdentityViolation, nm(g) + " after " + nm(f) + " must be " + nm(g));
    if (is_identity(g) && r != f)
      throw Error(ErrorKind::IdentityViolation, nm(g) + " after " + nm(f) + " must be " + nm(f));
  }

  std::vector<std::vector<int>> outb(n);
  std::vector<int> posb(m);
  for (int g = 0; g < m; ++g) {
    posb[g] = static_cast<int>(outb[morphisms_[g].src].size());
    outb[morphisms_[g].src].push_back(g);
  }
  std::vector<std::vector<int>> tab(m);
  for (int f = 0; f < m; ++f) {
    const auto& next = outb[morphisms_[f].tgt];
    tab[f].resize(next.size());
    for (std::size_t p = 0; p < next.size(); ++p) {
      int g = next[p];
      if (is_identity(f)) {
        tab[f][p] = g;
      } else if (is_identity(g)) {
        tab[f][p] = f;
      } else {
        auto it = comp_.find({g, f});
        if (it == comp_.end())
          throw Error(ErrorKind::MissingComposite, "no composite declared for " + nm(g) + " after " + nm(f));
        tab[f][p] = it->second;
      }
    }
  }

  for (int f = 0; f < m; ++f) {
    for (int g : outb[morphisms_[f].tgt]) {
      int gf = tab[f][posb[g]];
      for (int h : outb[morphisms_[g].tgt]) {
        int hg = tab[g][posb[h]];
        int lhs = tab[f][posb[hg]];
        int rhs = tab[gf][posb[h]];
        if (lhs != rhs)
          throw Error(ErrorKind::AssocViolation, "(" + nm(h) + " . " + nm(g) + ") . " + nm(f) + " = " + nm(lhs) +
                                                     " but " + nm(h) + " . (" + nm(g) + " . " + nm(f) +
                                                     ") = " + nm(rhs));
      }
    }
  }

  std::vector<int> oord(n), mord(m);
  std::iota(oord.begin(), oord.end(), 0);
  std::iota(mord.begin(), mord.end(), 0);
  std::sort(oord.begin(), oord.end(), [this](int a, int b) { return objects_[a] < objects_[b]; });
  std::sort(mord.begin(), mord.end(), [this](int a, int b) { return morphisms_[a].name < morphisms_[b].name; });
  std::vector<int> oidx(n), midx(m);
  for (int i = 0; i < n; ++i) oidx[oord[i]] = i;
  for (int i = 0; i < m; ++i) midx[mord[i]] = i;

  std::shared_ptr<FinCat> cat(new FinCat());
  cat->objects_.resize(n);
  cat->identity_.resize(n);
  for (int i = 0; i < n; ++i) {
    cat->objects_[i] = objects_[oord[i]];
    cat->identity_[i] = midx[identities_[oord[i]]];
    cat->obj_index_.emplace(cat->objects_[i], i);
  }
  cat->morphisms_.resize(m);
  cat->is_identity_.resize(m);
  for (int i = 0; i < m; ++i) {
    const auto& mi = morphisms_[mord[i]];
    cat->morphisms_[i] = MorphismInfo{mi.name, oidx[mi.src], oidx[mi.tgt]};
    cat->is_identity_[i] = is_identity_[mord[i]];
    cat->mor_index_.emplace(mi.name, i);
  }
  cat->out_.assign(n, {});
  cat->in_.assign(n, {});
  for (int i = 0; i < m; ++i) {
    cat->out_[cat->morphisms_[i].src].push_back(i);
    cat->in_[cat->morphisms_[i].tgt].push_back(i);
  }
  const auto& ms = cat->morphisms_;
  for (auto& v : cat->out_)
    std::stable_sort(v.begin(), v.end(), [&ms](int a, int b) { return ms[a].tgt < ms[b].tgt; });
  for (auto& v : cat->in_)
    std::stable_sort(v.begin(), v.end(), [&ms](int a, int b) { return ms[a].src < ms[b].src; });
  cat->pos_in_out_.resize(m);
  for (int x = 0; x < n; ++x)
    for (std::size_t p = 0; p < cat->out_[x].size(); ++p) cat->pos_in_out_[cat->out_[x][p]] = static_cast<int>(p);
  cat->pos_in_in_.resize(m);
  for (int y = 0; y < n; ++y)
    for (std::size_t p = 0; p < cat->in_[y].size(); ++p) cat->pos_in_in_[cat->in_[y][p]] = static_cast<int>(p);
  cat->after_.resize(m);
  for (int f = 0; f < m; ++f) {
    const auto& next = cat->out_[ms[f].tgt];
    cat->after_[f].resize(next.size());
    for (std::size_t p = 0; p < next.size(); ++p) {
      int g = next[p];
      cat->after_[f][p] = midx[tab[mord[f]][posb[mord[g]]]];
    }
  }

  BuiltCategory built;
  built.cat = std::move(cat);
  built.object_index = std::move(oidx);
  built.morphism_index = std::move(midx);
  return built;
}

// ---------------------------------------------------------------------------
// Functors

bool operator==(const FunctorMap& a, const FunctorMap& b) {
  return a.on_obj == b.on_obj && a.on_mor == b.on_mor && same_category(a.dom, b.dom) &&
         same_category(a.cod, b.cod);
}

FunctorMap make_functor(CatRef dom, CatRef cod, std::vector<int> on_obj, std::vector<int> on_mor) {
  const FinCat& A = *dom;
  const FinCat& B = *cod;
  if (static_cast<int>(on_obj.size()) != A.num_objects() || static_cast<int>(on_mor.size()) != A.num_morphisms())
    throw Error(ErrorKind::ArityMismatch, "functor tables do not match the domain size");
  for (int o = 0; o < A.num_objects(); ++o) {
    if (on_obj[o] < 0 || on_obj[o] >= B.num_objects())
      throw Error(ErrorKind::DanglingRef, "no image for object '" + A.object_name(o) + "'");
  }
  for (int f = 0; f < A.num_morphisms(); ++f) {
    if (A.is_identity(f)) {
      int want = B.identity(on_obj[A.src(f)]);
      if (on_mor[f] == -1) on_mor[f] = want;
      if (on_mor[f] != want)
        throw Error(ErrorKind::NotFunctorial, "identity '" + A.morphism_name(f) + "' must map to an identity");
      continue;
    }
    if (on_mor[f] < 0 || on_mor[f] >= B.num_morphisms())
      throw Error(ErrorKind::DanglingRef, "no image for morphism '" + A.morphism_name(f) + "'");
    int g = on_mor[f];
    if (B.src(g) != on_obj[A.src(f)] || B.tgt(g) != on_obj[A.tgt(f)])
      throw Error(ErrorKind::NotFunctorial, "morphism '" + A.morphism_name(f) + "' maps to '" + B.morphism_name(g) +
                                                "' whose endpoints do not match");
  }
  for (int f = 0; f < A.num_morphisms(); ++f) {
    for (int g : A.out_of(A.tgt(f))) {
      int gf = A.compose(g, f);
      if (on_mor[gf] != B.compose(on_mor[g], on_mor[f]))
        throw Error(ErrorKind::NotFunctorial,
                    "composition not preserved for pair (" + A.morphism_name(g) + ", " + A.morphism_name(f) + ")");
    }
  }
  return FunctorMap{std::move(dom), std::move(cod), std::move(on_obj), std::move(on_mor)};
}

FunctorMap make_functor_named(CatRef dom, CatRef cod, const std::map<std::string, std::string>& on_obj,
                              const std::map<std::string, std::string>& on_mor) {
  std::vector<int> objs(dom->num_objects(), -1), mors(dom->num_morphisms(), -1);
  for (const auto& [x, y] : on_obj) objs[dom->object_index(x)] = cod->object_index(y);
  for (const auto& [f, g] : on_mor) mors[dom->morphism_index(f)] = cod->morphism_index(g);
  return make_functor(std::move(dom), std::move(cod), std::move(objs), std::move(mors));
}

FunctorMap identity_functor(const CatRef& c) {
  std::vector<int> objs(c->num_objects()), mors(c->num_morphisms());
  std::iota(objs.begin(), objs.end(), 0);
  std::iota(mors.begin(), mors.end(), 0);
  return FunctorMap{c, c, std::move(objs), std::move(mors)};
}

FunctorMap compose(const FunctorMap& second, const FunctorMap& first) {
  if (!same_category(first.cod, second.dom))
    throw Error(ErrorKind::DomainMismatch, "functors are not composable");
  FunctorMap out{first.dom, second.cod, {}, {}};
  out.on_obj.resize(first.on_obj.size());
  out.on_mor.resize(first.on_mor.size());
  for (std::size_t i = 0; i < first.on_obj.size(); ++i) out.on_obj[i] = second.on_obj[first.on_obj[i]];
  for (std::size_t i = 0; i < first.on_mor.size(); ++i) out.on_mor[i] = second.on_mor[first.on_mor[i]];
  return out;
}

FunctorMap constant_functor(const CatRef& dom, const CatRef& cod, int obj) {
  if (obj < 0 || obj >= cod->num_objects()) throw Error(ErrorKind::DanglingRef, "constant value out of range");
  return FunctorMap{dom, cod, std::vector<int>(dom->num_objects(), obj),
                    std::vector<int>(dom->num_morphisms(), cod->identity(obj))};
}

FunctorMap point(const CatRef& cod, int obj) { return constant_functor(terminal_category(), cod, obj); }

FunctorMap to_terminal(const CatRef& dom) { return constant_functor(dom, terminal_category(), 0); }

bool is_identity_functor(const FunctorMap& f) {
  if (!same_category(f.dom, f.cod)) return false;
  for (std::size_t i = 0; i < f.on_obj.size(); ++i)
    if (f.on_obj[i] != static_cast<int>(i)) return false;
  for (std::size_t i = 0; i < f.on_mor.size(); ++i)
    if (f.on_mor[i] != static_cast<int>(i)) return false;
  return true;
}

bool is_isomorphism(const FunctorMap& f) {
  auto bijective = [](const std::vector<int>& v, int n) {
    if (static_cast<int>(v.size()) != n) return false;
    std::vector<char> hit(n, 0);
    for (int x : v) {
      if (hit[x]) return false;
      hit[x] = 1;
    }
    return true;
  };
  return bijective(f.on_obj, f.cod->num_objects()) && bijective(f.on_mor, f.cod->num_morphisms());
}

// ---------------------------------------------------------------------------
// Natural transformations

bool operator==(const NatTrans& a, const NatTrans& b) {
  return a.components == b.components && a.src == b.src && a.tgt == b.tgt;
}

static void require_parallel(const FunctorMap& f, const FunctorMap& g) {
  if (!same_category(f.dom, g.dom) || !same_category(f.cod, g.cod))
    throw Error(ErrorKind::NotParallel, "functors do not share domain and codomain");
}

NatTrans make_nat(FunctorMap src, FunctorMap tgt, std::vector<int> components) {
  require_parallel(src, tgt);
  const FinCat& A = *src.dom;
  const FinCat& B = *src.cod;
  if (static_cast<int>(components.size()) != A.num_objects())
    throw Error(ErrorKind::ArityMismatch, "component table does not match the domain size");
  for (int a = 0; a < A.num_objects(); ++a) {
    int c = components[a];
    if (c < 0 || c >= B.num_morphisms())
      throw Error(ErrorKind::DanglingRef, "no component at object '" + A.object_name(a) + "'");
    if (B.src(c) != src.obj(a) || B.tgt(c) != tgt.obj(a))
      throw Error(ErrorKind::NaturalityViolation, "component at '" + A.object_name(a) + "' is '" +
                                                      B.morphism_name(c) + "', which has the wrong endpoints");
  }
  for (int m = 0; m < A.num_morphisms(); ++m) {
    if (A.is_identity(m)) continue;
    int lhs = B.compose(tgt.mor(m), components[A.src(m)]);
    int rhs = B.compose(components[A.tgt(m)], src.mor(m));
    if (lhs != rhs)
      throw Error(ErrorKind::NaturalityViolation, "square at morphism '" + A.morphism_name(m) + "' does not commute");
  }
  return NatTrans{std::move(src), std::move(tgt), std::move(components)};
}

NatTrans identity_nat(const FunctorMap& f) {
  std::vector<int> comps(f.dom->num_objects());
  for (int a = 0; a < f.dom->num_objects(); ++a) comps[a] = f.cod->identity(f.obj(a));
  return NatTrans{f, f, std::move(comps)};
}

NatTrans vertical(const NatTrans& second, const NatTrans& first) {
  if (!(first.tgt == second.src)) throw Error(ErrorKind::BoundaryMismatch, "transformations are not composable");
  std::vector<int> comps(first.components.size());
  for (std::size_t a = 0; a < comps.size(); ++a)
    comps[a] = first.src.cod->compose(second.components[a], first.components[a]);
  return NatTrans{first.src, second.tgt, std::move(comps)};
}

NatTrans whisker(const NatTrans& sigma, const FunctorMap& pre) {
  std::vector<int> comps(pre.dom->num_objects());
  for (int x = 0; x < pre.dom->num_objects(); ++x) comps[x] = sigma.components[pre.obj(x)];
  return NatTrans{compose(sigma.src, pre), compose(sigma.tgt, pre), std::move(comps)};
}

NatTrans whisker(const FunctorMap& post, const NatTrans& sigma) {
  std::vector<int> comps(sigma.components.size());
  for (std::size_t a = 0; a < comps.size(); ++a) comps[a] = post.mor(sigma.components[a]);
  return NatTrans{compose(post, sigma.src), compose(post, sigma.tgt), std::move(comps)};
}

std::optional<int> inverse_of(const FinCat& c, int m) {
  for (int u : c.hom(c.tgt(m), c.src(m)))
    if (c.is_identity(c.compose(u, m)) && c.is_identity(c.compose(m, u))) return u;
  return std::nullopt;
}

bool is_iso(const FinCat& c, int m) { return inverse_of(c, m).has_value(); }

// ---------------------------------------------------------------------------
// Constructions

CatRef terminal_category() {
  static const CatRef one = [] {
    CategoryBuilder b;
    b.add_object("*");
    return b.build().cat;
  }();
  return one;
}

CatRef empty_category() {
  static const CatRef none = CategoryBuilder().build().cat;
  return none;
}

CatRef opposite(const CatRef& c) {
  CategoryBuilder b;
  for (int o = 0; o < c->num_objects(); ++o) b.add_object(c->object_name(o));
  std::vector<int> idx(c->num_morphisms());
  for (int m = 0; m < c->num_morphisms(); ++m) {
    idx[m] = c->is_identity(m) ? b.identity(c->src(m)) : b.add_morphism(c->morphism_name(m), c->tgt(m), c->src(m));
  }
  for (int f = 0; f < c->num_morphisms(); ++f) {
    if (c->is_identity(f)) continue;
    for (int g : c->out_of(c->tgt(f))) {
      if (c->is_identity(g)) continue;
      // In the opposite, f after g.
      b.set_composite(idx[f], idx[g], idx[c->compose(g, f)]);
    }
  }
  return b.build().cat;
}

int ProductCategory::object(std::span<const int> parts) const {
  auto it = object_lookup.find(std::vector<int>(parts.begin(), parts.end()));
  if (it == object_lookup.end()) throw Error(ErrorKind::DanglingRef, "no such product object");
  return it->second;
}

int ProductCategory::morphism(std::span<const int> parts) const {
  auto it = morphism_lookup.find(std::vector<int>(parts.begin(), parts.end()));
  if (it == morphism_lookup.end()) throw Error(ErrorKind::DanglingRef, "no such product morphism");
  return it->second;
}

ProductCategory product(const std::vector<CatRef>& factors) {
  const std::size_t k = factors.size();
  CategoryBuilder b;
  std::map<std::vector<int>, int> objs, mors;

  std::vector<std::vector<int>> obj_choices(k), mor_choices(k);
  for (std::size_t i = 0; i < k; ++i) {
    obj_choices[i].resize(factors[i]->num_objects());
    std::iota(obj_choices[i].begin(), obj_choices[i].end(), 0);
    mor_choices[i].resize(factors[i]->num_morphisms());
    std::iota(mor_choices[i].begin(), mor_choices[i].end(), 0);
  }
  for_each_tuple(obj_choices, [&](const std::vector<int>& parts) {
    std::vector<std::string> names(k);
    for (std::size_t i = 0; i < k; ++i) names[i] = factors[i]->object_name(parts[i]);
    int o = b.add_object(k == 0 ? std::string("*") : tuple_name(names));
    objs.emplace(parts, o);
  });
  for_each_tuple(mor_choices, [&](const std::vector<int>& parts) {
    bool all_id = true;
    std::vector<int> src(k), tgt(k);
    std::vector<std::string> names(k);
    for (std::size_t i = 0; i < k; ++i) {
      all_id = all_id && factors[i]->is_identity(parts[i]);
      src[i] = factors[i]->src(parts[i]);
      tgt[i] = factors[i]->tgt(parts[i]);
      names[i] = factors[i]->morphism_name(parts[i]);
    }
    int s = objs.at(src);
    int m = all_id ? b.identity(s) : b.add_morphism(tuple_name(names), s, objs.at(tgt));
    mors.emplace(parts, m);
  });
  for (const auto& [f, fi] : mors) {
    std::vector<std::vector<int>> next(k);
    for (std::size_t i = 0; i < k; ++i) {
      auto span = factors[i]->out_of(factors[i]->tgt(f[i]));
      next[i].assign(span.begin(), span.end());
    }
    for_each_tuple(next, [&](const std::vector<int>& g) {
      int gi = mors.at(g);
      if (b.is_identity(gi) || b.is_identity(fi)) return;
      std::vector<int> gf(k);
      for (std::size_t i = 0; i < k; ++i) gf[i] = factors[i]->compose(g[i], f[i]);
      b.set_composite(gi, fi, mors.at(gf));
    });
  }
  BuiltCategory built = b.build();

  ProductCategory out;
  out.cat = built.cat;
  out.factors = factors;
  for (auto& [parts, o] : objs) out.object_lookup.emplace(parts, built.object_index[o]);
  for (auto& [parts, m] : mors) out.morphism_lookup.emplace(parts, built.morphism_index[m]);
  for (std::size_t i = 0; i < k; ++i) {
    FunctorMap p{out.cat, factors[i], std::vector<int>(out.cat->num_objects()),
                 std::vector<int>(out.cat->num_morphisms())};
    for (auto& [parts, o] : out.object_lookup) p.on_obj[o] = parts[i];
    for (auto& [parts, m] : out.morphism_lookup) p.on_mor[m] = parts[i];
    out.projections.push_back(std::move(p));
  }
  return out;
}

CoproductCategory coproduct(const std::vector<CatRef>& summands) {
  CategoryBuilder b;
  std::vector<std::vector<int>> oidx(summands.size()), midx(summands.size());
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const FinCat& c = *summands[i];
    std::string tag = std::to_string(i) + ":";
    for (int o = 0; o < c.num_objects(); ++o) oidx[i].push_back(b.add_object(tag + c.object_name(o)));
    for (int m = 0; m < c.num_morphisms(); ++m)
      midx[i].push_back(c.is_identity(m) ? b.identity(oidx[i][c.src(m)])
                                         : b.add_morphism(tag + c.morphism_name(m), oidx[i][c.src(m)],
                                                          oidx[i][c.tgt(m)]));
    for (int f = 0; f < c.num_morphisms(); ++f) {
      if (c.is_identity(f)) continue;
      for (int g : c.out_of(c.tgt(f)))
        if (!c.is_identity(g)) b.set_composite(midx[i][g], midx[i][f], midx[i][c.compose(g, f)]);
    }
  }
  BuiltCategory built = b.build();
  CoproductCategory out;
  out.cat = built.cat;
  out.summands = summands;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    FunctorMap inj{summands[i], out.cat, {}, {}};
    for (int o : oidx[i]) inj.on_obj.push_back(built.object_index[o]);
    for (int m : midx[i]) inj.on_mor.push_back(built.morphism_index[m]);
    out.injections.push_back(std::move(inj));
  }
  return out;
}

CatRef construct(Construction kind, const std::vector<CatRef>& operands) {
  switch (kind) {
    case Construction::Terminal:
      if (!operands.empty()) throw Error(ErrorKind::ArityMismatch, "terminal takes no operands");
      return terminal_category();
    case Construction::Opposite:
      if (operands.size() != 1) throw Error(ErrorKind::ArityMismatch, "opposite takes one operand");
      return opposite(operands[0]);
    case Construction::Product:
      return product(operands).cat;
    case Construction::Coproduct:
      return coproduct(operands).cat;
  }
  throw Error(ErrorKind::ArityMismatch, "unknown construction");
}

PullbackCategory pullback(const FunctorMap& f, const FunctorMap& g) {
  if (!same_category(f.cod, g.cod)) throw Error(ErrorKind::CodomainMismatch, "cospan legs have different codomains");
  const FinCat& X = *f.dom;
  const FinCat& Y = *g.dom;
  CategoryBuilder b;
  std::map<std::pair<int, int>, int> objs, mors;
  for (int x = 0; x < X.num_objects(); ++x)
    for (int y = 0; y < Y.num_objects(); ++y)
      if (f.obj(x) == g.obj(y)) objs.emplace(std::make_pair(x, y), b.add_object(tuple_name({X.object_name(x), Y.object_name(y)})));
  for (int m = 0; m < X.num_morphisms(); ++m)
    for (int n = 0; n < Y.num_morphisms(); ++n) {
      if (f.mor(m) != g.mor(n)) continue;
      int s = objs.at({X.src(m), Y.src(n)});
      int id = X.is_identity(m) && Y.is_identity(n);
      int k = id ? b.identity(s)
                 : b.add_morphism(tuple_name({X.morphism_name(m), Y.morphism_name(n)}), s, objs.at({X.tgt(m), Y.tgt(n)}));
      mors.emplace(std::make_pair(m, n), k);
    }
  for (const auto& [fm, fi] : mors) {
    if (b.is_identity(fi)) continue;
    for (int gm : X.out_of(X.tgt(fm.first)))
      for (int gn : Y.out_of(Y.tgt(fm.second))) {
        auto it = mors.find({gm, gn});
        if (it == mors.end() || b.is_identity(it->second)) continue;
        b.set_composite(it->second, fi, mors.at({X.compose(gm, fm.first), Y.compose(gn, fm.second)}));
      }
  }
  BuiltCategory built = b.build();
  PullbackCategory out;
  out.cat = built.cat;
  out.pi1 = FunctorMap{out.cat, f.dom, std::vector<int>(out.cat->num_objects()), std::vector<int>(out.cat->num_morphisms())};
  out.pi2 = FunctorMap{out.cat, g.dom, std::vector<int>(out.cat->num_objects()), std::vector<int>(out.cat->num_morphisms())};
  for (const auto& [p, o] : objs) {
    out.pi1.on_obj[built.object_index[o]] = p.first;
    out.pi2.on_obj[built.object_index[o]] = p.second;
  }
  for (const auto& [p, m] : mors) {
    out.pi1.on_mor[built.morphism_index[m]] = p.first;
    out.pi2.on_mor[built.morphism_index[m]] = p.second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<FunctorMap> enumerate_functors(const CatRef& a, const CatRef& b) {
  const FinCat& A = *a;
  const FinCat& B = *b;
  const int n = A.num_objects();
  std::vector<int> nonid;
  std::vector<int> var_of(A.num_morphisms(), -1);
  for (int m = 0; m < A.num_morphisms(); ++m)
    if (!A.is_identity(m)) {
      var_of[m] = n + static_cast<int>(nonid.size());
      nonid.push_back(m);
    }

  kernels::Csp csp;
  std::vector<int> all_objs(B.num_objects());
  std::iota(all_objs.begin(), all_objs.end(), 0);
  for (int o = 0; o < n; ++o) csp.add_var(all_objs);
  for (int m : nonid) {
    int s = A.src(m), t = A.tgt(m);
    csp.add_var([&B, s, t](const int* x) { return B.hom(x[s], x[t]); });
  }
  // F(m) for any morphism, read from a partial assignment.
  auto image = [&A, &B, &var_of](const int* x, int m) {
    return A.is_identity(m) ? B.identity(x[A.src(m)]) : x[var_of[m]];
  };
  for (int f : nonid)
    for (int g : A.out_of(A.tgt(f))) {
      if (A.is_identity(g)) continue;
      int h = A.compose(g, f);
      std::vector<int> scope{var_of[f], var_of[g]};
      if (!A.is_identity(h)) scope.push_back(var_of[h]);
      csp.add_check(scope, [&B, &image, f, g, h](const int* x) {
        return image(x, h) == B.compose(image(x, g), image(x, f));
      });
    }

  Budget budget("enumerate_functors");
  auto sols = kernels::omp::solve(csp, budget);
  std::vector<FunctorMap> out;
  out.reserve(sols.size());
  for (const auto& s : sols) {
    FunctorMap F{a, b, std::vector<int>(s.begin(), s.begin() + n), std::vector<int>(A.num_morphisms())};
    for (int m = 0; m < A.num_morphisms(); ++m) F.on_mor[m] = image(s.data(), m);
    out.push_back(std::move(F));
  }
  return out;
}

std::vector<NatTrans> enumerate_nats(const FunctorMap& f, const FunctorMap& g) {
  require_parallel(f, g);
  const FinCat& A = *f.dom;
  const FinCat& B = *f.cod;
  kernels::Csp csp;
  for (int a = 0; a < A.num_objects(); ++a) {
    auto h = B.hom(f.obj(a), g.obj(a));
    csp.add_var(std::vector<int>(h.begin(), h.end()));
  }
  for (int m = 0; m < A.num_morphisms(); ++m) {
    if (A.is_identity(m)) continue;
    int s = A.src(m), t = A.tgt(m);
    int fm = f.mor(m), gm = g.mor(m);
    std::vector<int> scope{s, t};
    csp.add_check(scope, [&B, s, t, fm, gm](const int* x) { return B.compose(gm, x[s]) == B.compose(x[t], fm); });
  }
  Budget budget("enumerate_nats");
  auto sols = kernels::serial::solve(csp, budget);
  std::vector<NatTrans> out;
  out.reserve(sols.size());
  for (auto& s : sols) out.push_back(NatTrans{f, g, std::move(s)});
  return out;
}

std::string functor_label(const FunctorMap& f) {
  const FinCat& A = *f.dom;
  const FinCat& B = *f.cod;
  std::vector<std::string> objs, mors;
  for (int o = 0; o < A.num_objects(); ++o) objs.push_back(A.object_name(o) + ">" + B.object_name(f.obj(o)));
  for (int m = 0; m < A.num_morphisms(); ++m)
    if (!A.is_identity(m)) mors.push_back(A.morphism_name(m) + ">" + B.morphism_name(f.mor(m)));
  return "[" + join(objs, ",") + ";" + join(mors, ",") + "]";
}

int FunctorCategory::object_of(const FunctorMap& f) const {
  auto it = object_lookup.find(f.on_mor);
  if (it == object_lookup.end()) throw Error(ErrorKind::DanglingRef, "functor is not an object of the functor category");
  return it->second;
}

int FunctorCategory::morphism_of(const NatTrans& n) const {
  std::vector<int> key{object_of(n.src), object_of(n.tgt)};
  key.insert(key.end(), n.components.begin(), n.components.end());
  auto it = morphism_lookup.find(key);
  if (it == morphism_lookup.end()) throw Error(ErrorKind::DanglingRef, "transformation is not a morphism of the functor category");
  return it->second;
}

FunctorCategory functor_category(const CatRef& a, const CatRef& e) {
  FunctorCategory out;
  out.dom = a;
  out.cod = e;
  auto functors = enumerate_functors(a, e);
  Budget budget("functor_category");
  budget.tick(functors.size());
  const std::size_t n = functors.size();

  CategoryBuilder b;
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = functor_label(functors[i]);
    b.add_object(labels[i]);
  }
  // nats[i][j] = all transformations functors[i] => functors[j]
  std::vector<std::vector<std::vector<NatTrans>>> nats(n, std::vector<std::vector<NatTrans>>(n));
  std::vector<std::vector<std::vector<int>>> idx(n, std::vector<std::vector<int>>(n));
  std::map<std::vector<int>, int> key_to_builder;
  std::vector<NatTrans> by_builder;
  std::vector<std::vector<int>> key_of_builder;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      nats[i][j] = enumerate_nats(functors[i], functors[j]);
      budget.tick(nats[i][j].size());
      for (const auto& t : nats[i][j]) {
        bool is_id = i == j;
        if (is_id)
          for (int c : t.components) is_id = is_id && e->is_identity(c);
        int m;
        if (is_id) {
          m = b.identity(static_cast<int>(i));
        } else {
          std::vector<std::string> comps;
          for (int c : t.components) comps.push_back(e->morphism_name(c));
          m = b.add_morphism("<" + labels[i] + ">=><" + labels[j] + ">:[" + join(comps, ",") + "]",
                             static_cast<int>(i), static_cast<int>(j));
        }
        std::vector<int> key{static_cast<int>(i), static_cast<int>(j)};
        key.insert(key.end(), t.components.begin(), t.components.end());
        key_to_builder.emplace(key, m);
        idx[i][j].push_back(m);
        if (static_cast<int>(by_builder.size()) <= m) {
          by_builder.resize(m + 1);
          key_of_builder.resize(m + 1);
        }
        by_builder[m] = t;
        key_of_builder[m] = key;
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < nats[i][j].size(); ++p) {
        int fm = idx[i][j][p];
        if (b.is_identity(fm)) continue;
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t q = 0; q < nats[j][k].size(); ++q) {
            int gm = idx[j][k][q];
            if (b.is_identity(gm)) continue;
            std::vector<int> key{static_cast<int>(i), static_cast<int>(k)};
            for (std::size_t x = 0; x < nats[i][j][p].components.size(); ++x)
              key.push_back(e->compose(nats[j][k][q].components[x], nats[i][j][p].components[x]));
            b.set_composite(gm, fm, key_to_builder.at(key));
          }
      }
  BuiltCategory built = b.build();
  out.cat = built.cat;
  out.functors.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    int o = built.object_index[i];
    out.object_lookup.emplace(functors[i].on_mor, o);
    out.functors[o] = functors[i];
  }
  out.nats.resize(out.cat->num_morphisms());
  for (std::size_t m = 0; m < by_builder.size(); ++m) {
    int c = built.morphism_index[m];
    out.nats[c] = by_builder[m];
    std::vector<int> key = key_of_builder[m];
    key[0] = built.object_index[key[0]];
    key[1] = built.object_index[key[1]];
    out.morphism_lookup.emplace(std::move(key), c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Limits

bool operator==(const Cone& a, const Cone& b) { return a.apex == b.apex && a.legs == b.legs; }

bool is_cone(const FunctorMap& d, const Cone& c, ConeKind kind) {
  const FinCat& J = *d.dom;
  const FinCat& C = *d.cod;
  if (c.apex < 0 || c.apex >= C.num_objects() || static_cast<int>(c.legs.size()) != J.num_objects()) return false;
  for (int j = 0; j < J.num_objects(); ++j) {
    int l = c.legs[j];
    if (l < 0 || l >= C.num_morphisms()) return false;
    if (kind == ConeKind::Limit ? (C.src(l) != c.apex || C.tgt(l) != d.obj(j))
                                : (C.src(l) != d.obj(j) || C.tgt(l) != c.apex))
      return false;
  }
  for (int m = 0; m < J.num_morphisms(); ++m) {
    int s = J.src(m), t = J.tgt(m);
    int lhs = kind == ConeKind::Limit ? C.compose(d.mor(m), c.legs[s]) : C.compose(c.legs[t], d.mor(m));
    if (lhs != (kind == ConeKind::Limit ? c.legs[t] : c.legs[s])) return false;
  }
  return true;
}

std::vector<Cone> enumerate_cones(const FunctorMap& d, int apex, ConeKind kind, Budget& budget) {
  const FinCat& J = *d.dom;
  const FinCat& C = *d.cod;
  kernels::Csp csp;
  for (int j = 0; j < J.num_objects(); ++j) {
    auto h = kind == ConeKind::Limit ? C.hom(apex, d.obj(j)) : C.hom(d.obj(j), apex);
    csp.add_var(std::vector<int>(h.begin(), h.end()));
  }
  for (int m = 0; m < J.num_morphisms(); ++m) {
    if (J.is_identity(m)) continue;
    int s = J.src(m), t = J.tgt(m), dm = d.mor(m);
    std::vector<int> scope{s, t};
    if (kind == ConeKind::Limit)
      csp.add_check(scope, [&C, s, t, dm](const int* x) { return C.compose(dm, x[s]) == x[t]; });
    else
      csp.add_check(scope, [&C, s, t, dm](const int* x) { return C.compose(x[t], dm) == x[s]; });
  }
  auto sols = kernels::serial::solve(csp, budget);
  std::vector<Cone> out;
  out.reserve(sols.size());
  for (auto& s : sols) out.push_back(Cone{apex, std::move(s)});
  return out;
}

std::vector<Cone> enumerate_cones(const FunctorMap& d, ConeKind kind) {
  Budget budget("enumerate_cones");
  std::vector<Cone> out;
  for (int x = 0; x < d.cod->num_objects(); ++x) {
    auto part = enumerate_cones(d, x, kind, budget);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

namespace {

// Number of mediating morphisms, capped at 2.
int count_factorizations(const FinCat& C, const Cone& universal, const Cone& other, ConeKind kind, int* found) {
  int count = 0;
  auto h = kind == ConeKind::Limit ? C.hom(other.apex, universal.apex) : C.hom(universal.apex, other.apex);
  for (int u : h) {
    bool ok = true;
    for (std::size_t j = 0; j < universal.legs.size() && ok; ++j) {
      int l = kind == ConeKind::Limit ? C.compose(universal.legs[j], u) : C.compose(u, universal.legs[j]);
      ok = l == other.legs[j];
    }
    if (ok) {
      if (found) *found = u;
      if (++count == 2) break;
    }
  }
  return count;
}

bool universal_among(const FinCat& C, const Cone& c, const std::vector<Cone>& all, ConeKind kind) {
  for (const auto& other : all)
    if (count_factorizations(C, c, other, kind, nullptr) != 1) return false;
  return true;
}

}  // namespace

std::optional<int> factor_through(const FunctorMap& d, const Cone& universal, const Cone& other, ConeKind kind) {
  int u = -1;
  if (count_factorizations(*d.cod, universal, other, kind, &u) != 1) return std::nullopt;
  return u;
}

bool is_universal_cone(const FunctorMap& d, const Cone& c, ConeKind kind) {
  if (!is_cone(d, c, kind)) return false;
  return universal_among(*d.cod, c, enumerate_cones(d, kind), kind);
}

std::optional<Cone> universal_cone(const FunctorMap& d, ConeKind kind) {
  auto all = enumerate_cones(d, kind);
  for (const auto& c : all)
    if (universal_among(*d.cod, c, all, kind)) return c;
  return std::nullopt;
}

std::optional<Cone> limit_of_diagram(const FunctorMap& d) { return universal_cone(d, ConeKind::Limit); }

std::optional<Cone> colimit_of_diagram(const FunctorMap& d) { return universal_cone(d, ConeKind::Colimit); }

int count_components(const FinCat& c) {
  UnionFind uf(c.num_objects());
  for (int m = 0; m < c.num_morphisms(); ++m) uf.unite(c.src(m), c.tgt(m));
  return uf.count_classes();
}

bool is_connected(const FinCat& c) { return c.num_objects() > 0 && count_components(c) == 1; }

}  // namespace virteq
