#include "virteq/module.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "virteq/kernels.hpp"

namespace virteq {

// ---------------------------------------------------------------------------
// Module

std::vector<int> Module::right_preimage(int e, int beta) const {
  std::vector<int> out;
  for (int u : entry(cod_->tgt(beta), ea_[e]))
    if (right(u, beta) == e) out.push_back(u);
  return out;
}

std::vector<int> Module::left_preimage(int alpha, int e) const {
  std::vector<int> out;
  for (int u : entry(eb_[e], dom_->src(alpha)))
    if (left(alpha, u) == e) out.push_back(u);
  return out;
}

std::optional<int> Module::find_element(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Module::element_index(const std::string& name) const {
  auto e = find_element(name);
  if (!e) throw Error(ErrorKind::DanglingRef, "unknown element '" + name + "'");
  return *e;
}

bool operator==(const Module& x, const Module& y) {
  return x.names_ == y.names_ && x.eb_ == y.eb_ && x.ea_ == y.ea_ && x.left_ == y.left_ && x.right_ == y.right_ &&
         same_category(x.dom_, y.dom_) && same_category(x.cod_, y.cod_);
}

bool same_module(const ModuleRef& x, const ModuleRef& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  return *x == *y;
}

// ---------------------------------------------------------------------------
// ModuleBuilder

ModuleBuilder::ModuleBuilder(CatRef dom, CatRef cod) : dom_(std::move(dom)), cod_(std::move(cod)) {}

int ModuleBuilder::add_element(int b, int a, std::string name) {
  if (b < 0 || b >= cod_->num_objects() || a < 0 || a >= dom_->num_objects())
    throw Error(ErrorKind::DanglingRef, "element '" + name + "' sits over an unknown object");
  int e = num_elements();
  names_.push_back(std::move(name));
  eb_.push_back(b);
  ea_.push_back(a);
  left_.emplace_back(dom_->out_of(a).size(), -1);
  right_.emplace_back(cod_->into(b).size(), -1);
  left_.back()[dom_->out_pos(dom_->identity(a))] = e;
  right_.back()[cod_->in_pos(cod_->identity(b))] = e;
  return e;
}

void ModuleBuilder::set_left(int alpha, int e, int result) {
  if (e < 0 || e >= num_elements() || result < 0 || result >= num_elements() || alpha < 0 ||
      alpha >= dom_->num_morphisms())
    throw Error(ErrorKind::DanglingRef, "left action refers to an unknown element or morphism");
  if (dom_->src(alpha) != ea_[e])
    throw Error(ErrorKind::ActionLawViolation, "'" + dom_->morphism_name(alpha) + "' does not act on '" + names_[e] + "'");
  int& slot = left_[e][dom_->out_pos(alpha)];
  if (slot != -1 && slot != result)
    throw Error(ErrorKind::ActionLawViolation, "conflicting left action of '" + dom_->morphism_name(alpha) + "' on '" +
                                                   names_[e] + "'");
  slot = result;
}

void ModuleBuilder::set_right(int e, int beta, int result) {
  if (e < 0 || e >= num_elements() || result < 0 || result >= num_elements() || beta < 0 ||
      beta >= cod_->num_morphisms())
    throw Error(ErrorKind::DanglingRef, "right action refers to an unknown element or morphism");
  if (cod_->tgt(beta) != eb_[e])
    throw Error(ErrorKind::ActionLawViolation, "'" + cod_->morphism_name(beta) + "' does not act on '" + names_[e] + "'");
  int& slot = right_[e][cod_->in_pos(beta)];
  if (slot != -1 && slot != result)
    throw Error(ErrorKind::ActionLawViolation, "conflicting right action of '" + cod_->morphism_name(beta) + "' on '" +
                                                   names_[e] + "'");
  slot = result;
}

ModuleBuilder::Built ModuleBuilder::build_indexed() const {
  const FinCat& A = *dom_;
  const FinCat& B = *cod_;
  const int n = num_elements();
  {
    std::unordered_set<std::string> seen;
    for (const auto& nm : names_) {
      if (nm.empty()) throw Error(ErrorKind::ValidationError, "empty element name");
      if (nm.find('|') != std::string::npos)
        throw Error(ErrorKind::ValidationError, "element name '" + nm + "' contains '|'");
      if (!seen.insert(nm).second) throw Error(ErrorKind::DuplicateName, "element '" + nm + "'");
    }
  }
  auto L = [&](int alpha, int e) { return left_[e][A.out_pos(alpha)]; };
  auto R = [&](int e, int beta) { return right_[e][B.in_pos(beta)]; };

  for (int e = 0; e < n; ++e) {
    for (int alpha : A.out_of(ea_[e])) {
      int r = L(alpha, e);
      if (r < 0)
        throw Error(ErrorKind::ActionNotTotal, "'" + A.morphism_name(alpha) + "' . '" + names_[e] + "' is undefined");
      if (eb_[r] != eb_[e] || ea_[r] != A.tgt(alpha))
        throw Error(ErrorKind::ActionLawViolation, "'" + A.morphism_name(alpha) + "' . '" + names_[e] +
                                                       "' lands in the wrong entry");
    }
    for (int beta : B.into(eb_[e])) {
      int r = R(e, beta);
      if (r < 0)
        throw Error(ErrorKind::ActionNotTotal, "'" + names_[e] + "' . '" + B.morphism_name(beta) + "' is undefined");
      if (eb_[r] != B.src(beta) || ea_[r] != ea_[e])
        throw Error(ErrorKind::ActionLawViolation, "'" + names_[e] + "' . '" + B.morphism_name(beta) +
                                                       "' lands in the wrong entry");
    }
  }
  for (int e = 0; e < n; ++e) {
    for (int alpha : A.out_of(ea_[e]))
      for (int alpha2 : A.out_of(A.tgt(alpha)))
        if (L(A.compose(alpha2, alpha), e) != L(alpha2, L(alpha, e)))
          throw Error(ErrorKind::ActionLawViolation, "left action is not associative at '" + names_[e] + "' for (" +
                                                         A.morphism_name(alpha2) + ", " + A.morphism_name(alpha) + ")");
    for (int beta : B.into(eb_[e]))
      for (int beta2 : B.into(B.src(beta)))
        if (R(e, B.compose(beta, beta2)) != R(R(e, beta), beta2))
          throw Error(ErrorKind::ActionLawViolation, "right action is not associative at '" + names_[e] + "' for (" +
                                                         B.morphism_name(beta) + ", " + B.morphism_name(beta2) + ")");
    for (int alpha : A.out_of(ea_[e]))
      for (int beta : B.into(eb_[e]))
        if (R(L(alpha, e), beta) != L(alpha, R(e, beta)))
          throw Error(ErrorKind::ActionLawViolation, "actions of '" + A.morphism_name(alpha) + "' and '" +
                                                         B.morphism_name(beta) + "' do not commute on '" + names_[e] +
                                                         "'");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (eb_[x] != eb_[y]) return eb_[x] < eb_[y];
    if (ea_[x] != ea_[y]) return ea_[x] < ea_[y];
    return names_[x] < names_[y];
  });
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[order[i]] = i;

  std::shared_ptr<Module> m(new Module());
  m->dom_ = dom_;
  m->cod_ = cod_;
  m->names_.resize(n);
  m->eb_.resize(n);
  m->ea_.resize(n);
  m->left_.resize(n);
  m->right_.resize(n);
  m->ids_.resize(n);
  std::iota(m->ids_.begin(), m->ids_.end(), 0);
  for (int i = 0; i < n; ++i) {
    int e = order[i];
    m->names_[i] = names_[e];
    m->eb_[i] = eb_[e];
    m->ea_[i] = ea_[e];
    m->left_[i].resize(left_[e].size());
    for (std::size_t k = 0; k < left_[e].size(); ++k) m->left_[i][k] = idx[left_[e][k]];
    m->right_[i].resize(right_[e].size());
    for (std::size_t k = 0; k < right_[e].size(); ++k) m->right_[i][k] = idx[right_[e][k]];
    m->index_.emplace(m->names_[i], i);
  }
  const int na = A.num_objects(), nb = B.num_objects();
  m->start_.assign(static_cast<std::size_t>(na) * nb + 1, 0);
  for (int i = 0; i < n; ++i) ++m->start_[m->eb_[i] * na + m->ea_[i] + 1];
  for (std::size_t k = 1; k < m->start_.size(); ++k) m->start_[k] += m->start_[k - 1];
  return Built{std::move(m), std::move(idx)};
}

// ---------------------------------------------------------------------------
// Standard modules

ModuleRef comma_module(const FunctorMap& f, const FunctorMap& g) {
  if (!same_category(f.cod, g.cod)) throw Error(ErrorKind::CodomainMismatch, "comma of functors with different codomains");
  const FinCat& Z = *f.cod;
  const FinCat& X = *f.dom;
  const FinCat& Y = *g.dom;
  ModuleBuilder mb(g.dom, f.dom);
  std::map<std::tuple<int, int, int>, int> id;  // (x, y, α)
  for (int x = 0; x < X.num_objects(); ++x)
    for (int y = 0; y < Y.num_objects(); ++y)
      for (int alpha : Z.hom(f.obj(x), g.obj(y)))
        id.emplace(std::make_tuple(x, y, alpha),
                   mb.add_element(x, y, "(" + Y.object_name(y) + "," + X.object_name(x) + "," + Z.morphism_name(alpha) + ")"));
  for (const auto& [key, e] : id) {
    auto [x, y, alpha] = key;
    for (int gamma : Y.out_of(y))
      if (!Y.is_identity(gamma))
        mb.set_left(gamma, e, id.at({x, Y.tgt(gamma), Z.compose(g.mor(gamma), alpha)}));
    for (int beta : X.into(x))
      if (!X.is_identity(beta)) mb.set_right(e, beta, id.at({X.src(beta), y, Z.compose(alpha, f.mor(beta))}));
  }
  return mb.build();
}

int comma_element(const Module& m, const FinCat& z, int b, int a, int alpha) {
  return m.element_index("(" + m.dom()->object_name(a) + "," + m.cod()->object_name(b) + "," + z.morphism_name(alpha) +
                         ")");
}

int hom_element(const Module& hom, int alpha) {
  const FinCat& A = *hom.dom();
  return comma_element(hom, A, A.src(alpha), A.tgt(alpha), alpha);
}

std::vector<int> comma_element_morphisms(const Module& m, const FunctorMap& f, const FunctorMap& g) {
  const FinCat& Z = *f.cod;
  std::vector<int> out(m.num_elements(), -1);
  for (int x = 0; x < f.dom->num_objects(); ++x)
    for (int y = 0; y < g.dom->num_objects(); ++y)
      for (int alpha : Z.hom(f.obj(x), g.obj(y))) out[comma_element(m, Z, x, y, alpha)] = alpha;
  return out;
}

ModuleRef hom_module(const CatRef& a) {
  FunctorMap id = identity_functor(a);
  return comma_module(id, id);
}

ModuleRef representable(const FunctorMap& f, Variance variance) {
  FunctorMap id = identity_functor(f.cod);
  return variance == Variance::Covariant ? comma_module(id, f) : comma_module(f, id);
}

// ---------------------------------------------------------------------------
// Spans

SpanRep category_of_elements(const ModuleRef& em) {
  const Module& E = *em;
  const FinCat& A = *E.dom();
  const FinCat& B = *E.cod();
  CategoryBuilder cb;
  const int n = E.num_elements();
  for (int e = 0; e < n; ++e)
    cb.add_object("(" + A.object_name(E.elem_a(e)) + "," + B.object_name(E.elem_b(e)) + "," + E.element_name(e) + ")");

  struct Mor {
    int alpha, beta, src, tgt;
  };
  std::vector<Mor> mors(n);
  std::map<std::tuple<int, int, int, int>, int> index;
  std::vector<std::vector<int>> outs(n);
  for (int e = 0; e < n; ++e) {
    mors[cb.identity(e)] = {A.identity(E.elem_a(e)), B.identity(E.elem_b(e)), e, e};
    index.emplace(std::make_tuple(A.identity(E.elem_a(e)), B.identity(E.elem_b(e)), e, e), cb.identity(e));
  }
  for (int e = 0; e < n; ++e)
    for (int alpha : A.out_of(E.elem_a(e)))
      for (int beta : B.out_of(E.elem_b(e))) {
        if (A.is_identity(alpha) && B.is_identity(beta)) continue;
        int ae = E.left(alpha, e);
        for (int e2 : E.entry(B.tgt(beta), A.tgt(alpha)))
          if (E.right(e2, beta) == ae) {
            int m = cb.add_morphism("(" + A.morphism_name(alpha) + "," + B.morphism_name(beta) + "," + E.element_name(e) +
                                        "," + E.element_name(e2) + ")",
                                    e, e2);
            if (static_cast<int>(mors.size()) <= m) mors.resize(m + 1);
            mors[m] = {alpha, beta, e, e2};
            index.emplace(std::make_tuple(alpha, beta, e, e2), m);
            outs[e].push_back(m);
          }
      }
  for (int m = 0; m < static_cast<int>(mors.size()); ++m) {
    if (cb.is_identity(m)) continue;
    for (int m2 : outs[mors[m].tgt]) {
      int alpha = A.compose(mors[m2].alpha, mors[m].alpha);
      int beta = B.compose(mors[m2].beta, mors[m].beta);
      cb.set_composite(m2, m, index.at({alpha, beta, mors[m].src, mors[m2].tgt}));
    }
  }
  BuiltCategory built = cb.build();
  SpanRep s;
  s.total = built.cat;
  const int no = s.total->num_objects(), nm = s.total->num_morphisms();
  s.q = FunctorMap{s.total, E.dom(), std::vector<int>(no), std::vector<int>(nm)};
  s.p = FunctorMap{s.total, E.cod(), std::vector<int>(no), std::vector<int>(nm)};
  for (int e = 0; e < n; ++e) {
    s.q.on_obj[built.object_index[e]] = E.elem_a(e);
    s.p.on_obj[built.object_index[e]] = E.elem_b(e);
  }
  for (int m = 0; m < static_cast<int>(mors.size()); ++m) {
    s.q.on_mor[built.morphism_index[m]] = mors[m].alpha;
    s.p.on_mor[built.morphism_index[m]] = mors[m].beta;
  }
  return s;
}

namespace {

struct Lifts {
  std::vector<std::vector<int>> left_target;   // [x][out_pos(α)]
  std::vector<std::vector<int>> right_source;  // [x][in_pos(β)]
};

// Fills `lifts` and returns an empty string, or returns a witness.
std::string compute_lifts(const SpanRep& s, Lifts& lifts) {
  const FinCat& E = *s.total;
  const FinCat& A = *s.q.cod;
  const FinCat& B = *s.p.cod;
  const int n = E.num_objects();
  lifts.left_target.assign(n, {});
  lifts.right_source.assign(n, {});
  for (int x = 0; x < n; ++x) {
    int a = s.q.obj(x), b = s.p.obj(x);
    for (int alpha : A.out_of(a)) {
      int count = 0, target = -1;
      for (int m : E.out_of(x))
        if (s.q.mor(m) == alpha && B.is_identity(s.p.mor(m))) {
          ++count;
          target = E.tgt(m);
        }
      if (count != 1)
        return "object '" + E.object_name(x) + "' has " + std::to_string(count) + " lifts of '" +
               A.morphism_name(alpha) + "' with identity image in the second leg";
      lifts.left_target[x].push_back(target);
    }
    for (int beta : B.into(b)) {
      int count = 0, source = -1;
      for (int m : E.into(x))
        if (s.p.mor(m) == beta && A.is_identity(s.q.mor(m))) {
          ++count;
          source = E.src(m);
        }
      if (count != 1)
        return "object '" + E.object_name(x) + "' has " + std::to_string(count) + " lifts of '" +
               B.morphism_name(beta) + "' with identity image in the first leg";
      lifts.right_source[x].push_back(source);
    }
  }
  return {};
}

}  // namespace

TsdfReport is_tsdf(const SpanRep& s) {
  if (!same_category(s.q.dom, s.total) || !same_category(s.p.dom, s.total))
    return {false, "legs do not start at the total category"};
  const FinCat& E = *s.total;
  const FinCat& A = *s.q.cod;
  const FinCat& B = *s.p.cod;
  Lifts lifts;
  std::string w = compute_lifts(s, lifts);
  if (!w.empty()) return {false, w};
  const int n = E.num_objects();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto homs = E.hom(x, y);
      for (int alpha : A.hom(s.q.obj(x), s.q.obj(y)))
        for (int beta : B.hom(s.p.obj(x), s.p.obj(y))) {
          int count = 0;
          for (int m : homs)
            if (s.q.mor(m) == alpha && s.p.mor(m) == beta) ++count;
          int lx = lifts.left_target[x][A.out_pos(alpha)];
          int ry = lifts.right_source[y][B.in_pos(beta)];
          int expected = lx == ry ? 1 : 0;
          if (count != expected)
            return {false, "morphisms '" + E.object_name(x) + "' -> '" + E.object_name(y) + "' over (" +
                               A.morphism_name(alpha) + ", " + B.morphism_name(beta) + "): found " +
                               std::to_string(count) + ", expected " + std::to_string(expected)};
        }
    }
  return {};
}

ModuleRef span_to_module(const SpanRep& s) {
  TsdfReport r = is_tsdf(s);
  if (!r.ok) throw Error(ErrorKind::NotDiscreteFibration, r.witness);
  Lifts lifts;
  compute_lifts(s, lifts);
  const FinCat& E = *s.total;
  const FinCat& A = *s.q.cod;
  const FinCat& B = *s.p.cod;
  ModuleBuilder mb(s.q.cod, s.p.cod);
  for (int x = 0; x < E.num_objects(); ++x) mb.add_element(s.p.obj(x), s.q.obj(x), E.object_name(x));
  for (int x = 0; x < E.num_objects(); ++x) {
    auto outs = A.out_of(s.q.obj(x));
    for (std::size_t k = 0; k < outs.size(); ++k) mb.set_left(outs[k], x, lifts.left_target[x][k]);
    auto ins = B.into(s.p.obj(x));
    for (std::size_t k = 0; k < ins.size(); ++k) mb.set_right(x, ins[k], lifts.right_source[x][k]);
  }
  return mb.build();
}

std::optional<FunctorMap> find_span_iso(const SpanRep& s, const SpanRep& t) {
  if (!same_category(s.q.cod, t.q.cod) || !same_category(s.p.cod, t.p.cod)) return std::nullopt;
  if (!is_tsdf(s).ok || !is_tsdf(t).ok) return std::nullopt;
  auto ms = span_to_module(s);
  auto mt = span_to_module(t);
  auto iso = find_module_iso(ms, mt);
  if (!iso) return std::nullopt;
  const FinCat& S = *s.total;
  const FinCat& T = *t.total;
  std::vector<int> on_obj(S.num_objects());
  for (int x = 0; x < S.num_objects(); ++x)
    on_obj[x] = T.object_index(mt->element_name((*iso)[ms->element_index(S.object_name(x))]));
  std::vector<int> on_mor(S.num_morphisms(), -1);
  for (int m = 0; m < S.num_morphisms(); ++m)
    for (int k : T.hom(on_obj[S.src(m)], on_obj[S.tgt(m)]))
      if (t.q.mor(k) == s.q.mor(m) && t.p.mor(k) == s.p.mor(m)) on_mor[m] = k;
  for (int v : on_mor)
    if (v < 0) return std::nullopt;
  FunctorMap f;
  try {
    f = make_functor(s.total, t.total, on_obj, on_mor);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!is_isomorphism(f) || !(compose(t.q, f) == s.q) || !(compose(t.p, f) == s.p)) return std::nullopt;
  return f;
}

// ---------------------------------------------------------------------------
// Derived modules

ModuleRef module_coproduct(const std::vector<ModuleRef>& parts) {
  if (parts.empty()) throw Error(ErrorKind::ArityMismatch, "coproduct of no modules has no boundary");
  for (const auto& p : parts)
    if (!same_category(p->dom(), parts[0]->dom()) || !same_category(p->cod(), parts[0]->cod()))
      throw Error(ErrorKind::BoundaryMismatch, "coproduct of modules with different boundaries");
  ModuleBuilder mb(parts[0]->dom(), parts[0]->cod());
  std::vector<int> offset;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    offset.push_back(mb.num_elements());
    const Module& P = *parts[i];
    for (int e = 0; e < P.num_elements(); ++e)
      mb.add_element(P.elem_b(e), P.elem_a(e), std::to_string(i) + ":" + P.element_name(e));
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Module& P = *parts[i];
    for (int e = 0; e < P.num_elements(); ++e) {
      for (int alpha : P.dom()->out_of(P.elem_a(e))) mb.set_left(alpha, offset[i] + e, offset[i] + P.left(alpha, e));
      for (int beta : P.cod()->into(P.elem_b(e))) mb.set_right(offset[i] + e, beta, offset[i] + P.right(e, beta));
    }
  }
  return mb.build();
}

ModuleRef generated_submodule(const ModuleRef& em, const std::vector<int>& generators) {
  const Module& E = *em;
  std::vector<char> in(E.num_elements(), 0);
  std::vector<int> stack;
  for (int g : generators)
    if (!in[g]) {
      in[g] = 1;
      stack.push_back(g);
    }
  while (!stack.empty()) {
    int e = stack.back();
    stack.pop_back();
    auto visit = [&](int r) {
      if (!in[r]) {
        in[r] = 1;
        stack.push_back(r);
      }
    };
    for (int alpha : E.dom()->out_of(E.elem_a(e))) visit(E.left(alpha, e));
    for (int beta : E.cod()->into(E.elem_b(e))) visit(E.right(e, beta));
  }
  ModuleBuilder mb(E.dom(), E.cod());
  std::vector<int> idx(E.num_elements(), -1);
  for (int e = 0; e < E.num_elements(); ++e)
    if (in[e]) idx[e] = mb.add_element(E.elem_b(e), E.elem_a(e), E.element_name(e));
  for (int e = 0; e < E.num_elements(); ++e) {
    if (!in[e]) continue;
    for (int alpha : E.dom()->out_of(E.elem_a(e))) mb.set_left(alpha, idx[e], idx[E.left(alpha, e)]);
    for (int beta : E.cod()->into(E.elem_b(e))) mb.set_right(idx[e], beta, idx[E.right(e, beta)]);
  }
  return mb.build();
}

bool is_module_iso(const ModuleRef& em, const ModuleRef& fm, const std::vector<int>& map) {
  const Module& E = *em;
  const Module& F = *fm;
  if (!same_category(E.dom(), F.dom()) || !same_category(E.cod(), F.cod())) return false;
  if (E.num_elements() != F.num_elements() || static_cast<int>(map.size()) != E.num_elements()) return false;
  std::vector<char> hit(F.num_elements(), 0);
  for (int e = 0; e < E.num_elements(); ++e) {
    int x = map[e];
    if (x < 0 || x >= F.num_elements() || hit[x]) return false;
    hit[x] = 1;
    if (F.elem_a(x) != E.elem_a(e) || F.elem_b(x) != E.elem_b(e)) return false;
  }
  for (int e = 0; e < E.num_elements(); ++e) {
    for (int alpha : E.dom()->out_of(E.elem_a(e)))
      if (map[E.left(alpha, e)] != F.left(alpha, map[e])) return false;
    for (int beta : E.cod()->into(E.elem_b(e)))
      if (map[E.right(e, beta)] != F.right(map[e], beta)) return false;
  }
  return true;
}

std::optional<std::vector<int>> find_module_iso(const ModuleRef& em, const ModuleRef& fm) {
  const Module& E = *em;
  const Module& F = *fm;
  if (!same_category(E.dom(), F.dom()) || !same_category(E.cod(), F.cod())) return std::nullopt;
  const FinCat& A = *E.dom();
  const FinCat& B = *E.cod();
  for (int b = 0; b < B.num_objects(); ++b)
    for (int a = 0; a < A.num_objects(); ++a)
      if (E.entry_size(b, a) != F.entry_size(b, a)) return std::nullopt;

  kernels::Csp csp;
  for (int e = 0; e < E.num_elements(); ++e) {
    auto dom = F.entry(E.elem_b(e), E.elem_a(e));
    csp.add_var(std::vector<int>(dom.begin(), dom.end()));
  }
  for (int e = 0; e < E.num_elements(); ++e) {
    for (int u : E.entry(E.elem_b(e), E.elem_a(e))) {
      if (u >= e) break;
      csp.add_check_at(e, [e, u](const int* x) { return x[e] != x[u]; });
    }
    for (int alpha : A.out_of(E.elem_a(e))) {
      if (A.is_identity(alpha)) continue;
      int r = E.left(alpha, e);
      std::vector<int> scope{e, r};
      csp.add_check(scope, [&F, alpha, e, r](const int* x) { return x[r] == F.left(alpha, x[e]); });
    }
    for (int beta : B.into(E.elem_b(e))) {
      if (B.is_identity(beta)) continue;
      int r = E.right(e, beta);
      std::vector<int> scope{e, r};
      csp.add_check(scope, [&F, beta, e, r](const int* x) { return x[r] == F.right(x[e], beta); });
    }
  }
  Budget budget("find_module_iso");
  auto sols = kernels::serial::solve(csp, budget, 1);
  if (sols.empty()) return std::nullopt;
  return sols.front();
}

}  // namespace virteq
