#include "virteq/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace virteq::io {

using nlohmann::json;

namespace {

template <class Map>
const auto& lookup(const Map& m, const std::string& name, const char* kind) {
  auto it = m.find(name);
  if (it == m.end()) throw Error(ErrorKind::DanglingRef, std::string("unknown ") + kind + " '" + name + "'");
  return it->second;
}

template <class Map>
void claim(const Map& m, const std::string& name, const char* kind) {
  if (name.empty()) throw Error(ErrorKind::ValidationError, std::string("empty ") + kind + " name");
  if (m.count(name)) throw Error(ErrorKind::DuplicateName, std::string(kind) + " '" + name + "'");
}

std::pair<std::string, std::string> split_key(const std::string& key) {
  auto bar = key.find('|');
  if (bar == std::string::npos || key.find('|', bar + 1) != std::string::npos)
    throw Error(ErrorKind::ParseError, "key '" + key + "' is not of the form 'x|y'");
  return {key.substr(0, bar), key.substr(bar + 1)};
}

std::vector<std::string> split_all(const std::string& key) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto bar = key.find('|', start);
    out.push_back(key.substr(start, bar - start));
    if (bar == std::string::npos) return out;
    start = bar + 1;
  }
}

// ---------------------------------------------------------------------------
// Values to JSON

json category_json(const std::string& name, const FinCat& c) {
  json objs = json::array(), mors = json::array(), comps = json::array();
  for (int o = 0; o < c.num_objects(); ++o) objs.push_back(c.object_name(o));
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    mors.push_back({{"name", c.morphism_name(m)}, {"src", c.object_name(c.src(m))}, {"tgt", c.object_name(c.tgt(m))}});
    for (int g : c.out_of(c.tgt(m))) {
      if (c.is_identity(g)) continue;
      comps.push_back({{"first", c.morphism_name(m)},
                       {"second", c.morphism_name(g)},
                       {"result", c.morphism_name(c.compose(g, m))}});
    }
  }
  return {{"name", name}, {"objects", objs}, {"morphisms", mors}, {"composites", comps}};
}

json functor_json(const std::string& name, const FunctorEntry& e) {
  const FunctorMap& f = e.value;
  json objs = json::object(), mors = json::object();
  for (int o = 0; o < f.dom->num_objects(); ++o) objs[f.dom->object_name(o)] = f.cod->object_name(f.obj(o));
  for (int m = 0; m < f.dom->num_morphisms(); ++m)
    if (!f.dom->is_identity(m)) mors[f.dom->morphism_name(m)] = f.cod->morphism_name(f.mor(m));
  return {{"name", name}, {"dom", e.dom}, {"cod", e.cod}, {"objects", objs}, {"morphisms", mors}};
}

json module_json(const std::string& name, const ModuleEntry& entry) {
  const Module& m = *entry.value;
  const FinCat& A = *m.dom();
  const FinCat& B = *m.cod();
  json entries = json::object(), left = json::object(), right = json::object();
  for (int b = 0; b < B.num_objects(); ++b)
    for (int a = 0; a < A.num_objects(); ++a) {
      if (m.entry_size(b, a) == 0) continue;
      std::vector<std::string> names;
      for (int e : m.entry(b, a)) names.push_back(m.element_name(e));
      std::sort(names.begin(), names.end());
      entries[B.object_name(b) + "|" + A.object_name(a)] = names;
    }
  for (int e = 0; e < m.num_elements(); ++e) {
    for (int alpha : A.out_of(m.elem_a(e)))
      if (!A.is_identity(alpha))
        left[A.morphism_name(alpha) + "|" + m.element_name(e)] = m.element_name(m.left(alpha, e));
    for (int beta : B.into(m.elem_b(e)))
      if (!B.is_identity(beta))
        right[B.morphism_name(beta) + "|" + m.element_name(e)] = m.element_name(m.right(e, beta));
  }
  return {{"name", name}, {"dom", entry.dom}, {"cod", entry.cod}, {"entries", entries}, {"left", left}, {"right", right}};
}

json nat_json(const std::string& name, const NatEntry& e) {
  const NatTrans& n = e.value;
  json comps = json::object();
  for (int o = 0; o < n.src.dom->num_objects(); ++o)
    comps[n.src.dom->object_name(o)] = n.src.cod->morphism_name(n.components[o]);
  return {{"name", name}, {"src", e.src}, {"tgt", e.tgt}, {"components", comps}};
}

json square_json(const std::string& name, const SquareEntry& e) {
  return {{"name", name}, {"h", e.h}, {"k", e.k}, {"f", e.f}, {"g", e.g}, {"lam", e.lam}};
}

std::string tuple_key(const Cell& c, int t) {
  const SourceShape& s = *c.shape;
  if (s.modules.empty()) return s.base->object_name(s.tuples[t][0]);
  std::string key;
  for (int i = 0; i < s.length(); ++i) {
    if (i) key += "|";
    key += s.modules[i]->element_name(s.tuples[t][i]);
  }
  return key;
}

json cell_json(const std::string& name, const CellEntry& e) {
  const Cell& c = e.value;
  json values = json::object();
  for (int t = 0; t < c.shape->num_tuples(); ++t) values[tuple_key(c, t)] = c.target->element_name(c.values[t]);
  json out = {{"name", name}, {"source", e.source}, {"target", e.target}, {"vf", e.vf}, {"vg", e.vg}, {"values", values}};
  if (e.source.empty()) out["base"] = e.base;
  return out;
}

// ---------------------------------------------------------------------------
// JSON to values

std::string str(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  if (!j[key].is_string()) throw Error(ErrorKind::ParseError, std::string("field '") + key + "' must be a string");
  return j[key].get<std::string>();
}

const json& field(const json& j, const char* key, json::value_t type) {
  static const json empty_object = json::object();
  static const json empty_array = json::array();
  if (!j.contains(key)) return type == json::value_t::array ? empty_array : empty_object;
  const json& v = j[key];
  if (v.type() != type)
    throw Error(ErrorKind::ParseError, std::string("field '") + key + "' must be " +
                                           (type == json::value_t::array ? "an array" : "an object"));
  return v;
}

const json& arr(const json& j, const char* key) { return field(j, key, json::value_t::array); }
const json& obj(const json& j, const char* key) { return field(j, key, json::value_t::object); }

std::string as_string(const json& v, const char* what) {
  if (!v.is_string()) throw Error(ErrorKind::ParseError, std::string(what) + " must be a string");
  return v.get<std::string>();
}

CatRef parse_category(const json& j) {
  CategoryBuilder b;
  std::map<std::string, int> objs, mors;
  for (const auto& o : arr(j, "objects")) {
    std::string n = as_string(o, "object");
    if (objs.count(n)) throw Error(ErrorKind::DuplicateName, "object '" + n + "'");
    int idx = b.add_object(n);
    objs[n] = idx;
    mors["id:" + n] = b.identity(idx);
  }
  auto object = [&](const std::string& n) {
    auto it = objs.find(n);
    if (it == objs.end()) throw Error(ErrorKind::DanglingRef, "unknown object '" + n + "'");
    return it->second;
  };
  auto morphism = [&](const std::string& n) {
    auto it = mors.find(n);
    if (it == mors.end()) throw Error(ErrorKind::DanglingRef, "unknown morphism '" + n + "'");
    return it->second;
  };
  for (const auto& m : arr(j, "morphisms")) {
    std::string n = str(m, "name");
    if (mors.count(n)) throw Error(ErrorKind::DuplicateName, "morphism '" + n + "'");
    mors[n] = b.add_morphism(n, object(str(m, "src")), object(str(m, "tgt")));
  }
  for (const auto& c : arr(j, "composites"))
    b.set_composite(morphism(str(c, "second")), morphism(str(c, "first")), morphism(str(c, "result")));
  return b.build().cat;
}

std::map<std::string, std::string> string_map(const json& j, const char* key) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : obj(j, key).items()) out[k] = as_string(v, key);
  return out;
}

ModuleRef parse_module(const json& j, const CatRef& dom, const CatRef& cod) {
  ModuleBuilder mb(dom, cod);
  std::map<std::string, int> elems;
  for (const auto& [key, names] : obj(j, "entries").items()) {
    auto [bn, an] = split_key(key);
    int b = cod->object_index(bn), a = dom->object_index(an);
    if (!names.is_array()) throw Error(ErrorKind::ParseError, "entry '" + key + "' must be an array");
    for (const auto& n : names) {
      std::string s = as_string(n, "element");
      if (elems.count(s)) throw Error(ErrorKind::DuplicateName, "element '" + s + "'");
      elems[s] = mb.add_element(b, a, s);
    }
  }
  auto element = [&](const std::string& n) {
    auto it = elems.find(n);
    if (it == elems.end()) throw Error(ErrorKind::DanglingRef, "unknown element '" + n + "'");
    return it->second;
  };
  for (const auto& [key, r] : string_map(j, "left")) {
    auto [mn, en] = split_key(key);
    mb.set_left(dom->morphism_index(mn), element(en), element(r));
  }
  for (const auto& [key, r] : string_map(j, "right")) {
    auto [mn, en] = split_key(key);
    mb.set_right(element(en), cod->morphism_index(mn), element(r));
  }
  return mb.build();
}

NatTrans parse_nat(const json& j, const FunctorMap& src, const FunctorMap& tgt) {
  if (!same_category(src.dom, tgt.dom) || !same_category(src.cod, tgt.cod))
    throw Error(ErrorKind::NotParallel, "components between functors that are not parallel");
  std::vector<int> comps(src.dom->num_objects(), -1);
  for (const auto& [o, m] : string_map(j, "components")) comps[src.dom->object_index(o)] = src.cod->morphism_index(m);
  for (int o = 0; o < src.dom->num_objects(); ++o)
    if (comps[o] < 0) throw Error(ErrorKind::ValidationError, "missing component at '" + src.dom->object_name(o) + "'");
  return make_nat(src, tgt, std::move(comps));
}

Cell parse_cell(const json& j, const ShapeRef& shape, const ModuleRef& target, const FunctorMap& vf,
                const FunctorMap& vg) {
  auto values = string_map(j, "values");
  std::vector<int> out(shape->num_tuples(), -1);
  for (const auto& [key, v] : values) {
    std::vector<int> tuple;
    if (shape->modules.empty()) {
      tuple.push_back(shape->base->object_index(key));
    } else {
      auto parts = split_all(key);
      if (static_cast<int>(parts.size()) != shape->length())
        throw Error(ErrorKind::ArityMismatch, "tuple '" + key + "' has the wrong length");
      for (int i = 0; i < shape->length(); ++i) tuple.push_back(shape->modules[i]->element_index(parts[i]));
    }
    out[shape->find(tuple)] = target->element_index(v);
  }
  for (int t = 0; t < shape->num_tuples(); ++t)
    if (out[t] < 0) throw Error(ErrorKind::ValidationError, "no value for a source tuple");
  return make_cell(shape, target, vf, vg, std::move(out));
}

// Line of the first `"name": "<n>"` in the text, or 0.
int line_of(std::string_view text, const std::string& n) {
  std::string needle = json(n).dump();
  std::size_t pos = 0;
  while ((pos = text.find("\"name\"", pos)) != std::string_view::npos) {
    std::size_t p = pos + 6;
    while (p < text.size() && (text[p] == ' ' || text[p] == '\t' || text[p] == '\n' || text[p] == '\r')) ++p;
    if (p < text.size() && text[p] == ':') {
      ++p;
      while (p < text.size() && (text[p] == ' ' || text[p] == '\t' || text[p] == '\n' || text[p] == '\r')) ++p;
      if (text.substr(p, needle.size()) == needle)
        return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
    }
    pos += 6;
  }
  return 0;
}

// e.what() without its "<kind>: " prefix.
std::string message(const Error& e) {
  std::string w = e.what();
  std::string prefix = std::string(to_string(e.kind())) + ": ";
  return w.rfind(prefix, 0) == 0 ? w.substr(prefix.size()) : w;
}

struct Item {
  json value;
  std::string where;  // "file:line"
};

struct Document {
  std::string source;
  std::string text;
};

}  // namespace

// ---------------------------------------------------------------------------
// Workspace

const CatRef& Workspace::category(const std::string& name) const { return lookup(categories, name, "category"); }
const FunctorMap& Workspace::functor(const std::string& name) const { return lookup(functors, name, "functor").value; }
const ModuleRef& Workspace::module(const std::string& name) const { return lookup(modules, name, "module").value; }
const NatTrans& Workspace::nat(const std::string& name) const { return lookup(nats, name, "nat").value; }
const Square& Workspace::square(const std::string& name) const { return lookup(squares, name, "square").value; }
const Cell& Workspace::cell(const std::string& name) const { return lookup(cells, name, "cell").value; }

void Workspace::add_category(const std::string& name, CatRef c) {
  claim(categories, name, "category");
  if (name.find('|') != std::string::npos) throw Error(ErrorKind::ValidationError, "category name contains '|'");
  categories.emplace(name, std::move(c));
}

void Workspace::add_functor(const std::string& name, const std::string& dom, const std::string& cod, FunctorMap f) {
  claim(functors, name, "functor");
  if (!same_category(category(dom), f.dom) || !same_category(category(cod), f.cod))
    throw Error(ErrorKind::BoundaryMismatch, "functor '" + name + "' does not sit over " + dom + " -> " + cod);
  functors.emplace(name, FunctorEntry{dom, cod, std::move(f)});
}

void Workspace::add_module(const std::string& name, const std::string& dom, const std::string& cod, ModuleRef m) {
  claim(modules, name, "module");
  if (!same_category(category(dom), m->dom()) || !same_category(category(cod), m->cod()))
    throw Error(ErrorKind::BoundaryMismatch, "module '" + name + "' does not sit over " + dom + " -> " + cod);
  modules.emplace(name, ModuleEntry{dom, cod, std::move(m)});
}

void Workspace::add_nat(const std::string& name, const std::string& src, const std::string& tgt, NatTrans n) {
  claim(nats, name, "nat");
  if (!(functor(src) == n.src) || !(functor(tgt) == n.tgt))
    throw Error(ErrorKind::BoundaryMismatch, "nat '" + name + "' does not sit over " + src + " => " + tgt);
  nats.emplace(name, NatEntry{src, tgt, std::move(n)});
}

void Workspace::add_square(const std::string& name, const std::string& h, const std::string& k, const std::string& f,
                           const std::string& g, const std::string& lam) {
  claim(squares, name, "square");
  Square s = make_square(functor(h), functor(k), functor(f), functor(g), nat(lam));
  squares.emplace(name, SquareEntry{h, k, f, g, lam, std::move(s)});
}

void Workspace::add_cell(const std::string& name, std::vector<std::string> source, const std::string& base,
                         const std::string& target, const std::string& vf, const std::string& vg, Cell c) {
  claim(cells, name, "cell");
  bool ok = static_cast<int>(source.size()) == c.shape->length() && same_module(module(target), c.target) &&
            functor(vf) == c.vf && functor(vg) == c.vg;
  for (std::size_t i = 0; ok && i < source.size(); ++i) ok = same_module(module(source[i]), c.shape->modules[i]);
  if (ok && source.empty()) ok = same_category(category(base), c.shape->base);
  if (!ok) throw Error(ErrorKind::BoundaryMismatch, "cell '" + name + "' does not sit over its named boundary");
  std::string b = source.empty() ? base : std::string();
  cells.emplace(name, CellEntry{std::move(source), std::move(b), target, vf, vg, std::move(c)});
}

void Workspace::import_category(const Workspace& other, const std::string& name) {
  if (!categories.count(name)) categories.emplace(name, other.category(name));
}

void Workspace::import_functor(const Workspace& other, const std::string& name) {
  if (functors.count(name)) return;
  const auto& e = lookup(other.functors, name, "functor");
  import_category(other, e.dom);
  import_category(other, e.cod);
  functors.emplace(name, e);
}

void Workspace::import_module(const Workspace& other, const std::string& name) {
  if (modules.count(name)) return;
  const auto& e = lookup(other.modules, name, "module");
  import_category(other, e.dom);
  import_category(other, e.cod);
  modules.emplace(name, e);
}

void Workspace::import_nat(const Workspace& other, const std::string& name) {
  if (nats.count(name)) return;
  const auto& e = lookup(other.nats, name, "nat");
  import_functor(other, e.src);
  import_functor(other, e.tgt);
  nats.emplace(name, e);
}

void Workspace::import_square(const Workspace& other, const std::string& name) {
  if (squares.count(name)) return;
  const auto& e = lookup(other.squares, name, "square");
  for (const auto* f : {&e.h, &e.k, &e.f, &e.g}) import_functor(other, *f);
  import_nat(other, e.lam);
  squares.emplace(name, e);
}

std::optional<std::string> Workspace::name_of(const CatRef& c) const {
  for (const auto& [n, d] : categories)
    if (same_category(c, d)) return n;
  return std::nullopt;
}

bool operator==(const Workspace& a, const Workspace& b) {
  auto same_keys = [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return false;
    for (auto i = x.begin(), j = y.begin(); i != x.end(); ++i, ++j)
      if (i->first != j->first) return false;
    return true;
  };
  if (!same_keys(a.categories, b.categories) || !same_keys(a.functors, b.functors) ||
      !same_keys(a.modules, b.modules) || !same_keys(a.nats, b.nats) || !same_keys(a.squares, b.squares) ||
      !same_keys(a.cells, b.cells))
    return false;
  for (const auto& [n, c] : a.categories)
    if (!same_category(c, b.categories.at(n))) return false;
  for (const auto& [n, e] : a.functors) {
    const auto& o = b.functors.at(n);
    if (e.dom != o.dom || e.cod != o.cod || !(e.value == o.value)) return false;
  }
  for (const auto& [n, e] : a.modules) {
    const auto& o = b.modules.at(n);
    if (e.dom != o.dom || e.cod != o.cod || !same_module(e.value, o.value)) return false;
  }
  for (const auto& [n, e] : a.nats) {
    const auto& o = b.nats.at(n);
    if (e.src != o.src || e.tgt != o.tgt || !(e.value == o.value)) return false;
  }
  for (const auto& [n, e] : a.squares) {
    const auto& o = b.squares.at(n);
    if (e.h != o.h || e.k != o.k || e.f != o.f || e.g != o.g || e.lam != o.lam) return false;
  }
  for (const auto& [n, e] : a.cells) {
    const auto& o = b.cells.at(n);
    if (e.source != o.source || e.base != o.base || e.target != o.target || e.vf != o.vf || e.vg != o.vg ||
        !(e.value == o.value))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

const char* const kKinds[] = {"categories", "functors", "modules", "nats", "squares", "cells"};
const char* const kSingular[] = {"category", "functor", "module", "nat", "square", "cell"};

const char* singular(const std::string& kind) {
  return kSingular[std::find(std::begin(kKinds), std::end(kKinds), kind) - std::begin(kKinds)];
}

Workspace build_workspace(const std::vector<Document>& docs) {
  std::map<std::string, std::vector<std::pair<std::string, Item>>> items;  // kind -> (name, item)
  std::map<std::string, std::set<std::string>> seen;
  for (const auto& d : docs) {
    json root;
    try {
      root = json::parse(d.text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::ParseError, d.source + ": " + e.what());
    }
    if (!root.is_object()) throw Error(ErrorKind::ParseError, d.source + ": top level must be an object");
    for (const auto& [key, value] : root.items()) {
      if (key == "report") continue;
      if (std::find(std::begin(kKinds), std::end(kKinds), key) == std::end(kKinds))
        throw Error(ErrorKind::ParseError, d.source + ": unknown top-level key '" + key + "'");
      if (!value.is_array()) throw Error(ErrorKind::ParseError, d.source + ": '" + key + "' must be an array");
      for (const auto& v : value) {
        if (!v.is_object() || !v.contains("name") || !v["name"].is_string())
          throw Error(ErrorKind::ParseError, d.source + ": every entry of '" + key + "' needs a string name");
        std::string n = v["name"].get<std::string>();
        std::string where = d.source + ":" + std::to_string(line_of(d.text, n));
        if (!seen[key].insert(n).second)
          throw Error(ErrorKind::ParseError, where + ": duplicate " + singular(key) + " name '" + n + "'");
        items[key].push_back({n, Item{v, where}});
      }
    }
  }

  Workspace ws;
  auto each = [&](const char* kind, const auto& body) {
    for (const auto& [n, item] : items[kind]) {
      const std::string ctx = item.where + ": " + singular(kind) + " '" + n + "': ";
      try {
        body(n, item.value);
      } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, ctx + e.what());
      } catch (const Error& e) {
        ErrorKind k = e.kind() == ErrorKind::DanglingRef || e.kind() == ErrorKind::ParseError
                          ? e.kind()
                          : ErrorKind::ValidationError;
        throw Error(k, ctx + (k == ErrorKind::ValidationError ? e.what() : message(e)));
      }
    }
  };
  each("categories", [&](const std::string& n, const json& j) { ws.add_category(n, parse_category(j)); });
  each("functors", [&](const std::string& n, const json& j) {
    std::string dom = str(j, "dom"), cod = str(j, "cod");
    ws.add_functor(n, dom, cod,
                   make_functor_named(ws.category(dom), ws.category(cod), string_map(j, "objects"),
                                      string_map(j, "morphisms")));
  });
  each("modules", [&](const std::string& n, const json& j) {
    std::string dom = str(j, "dom"), cod = str(j, "cod");
    ws.add_module(n, dom, cod, parse_module(j, ws.category(dom), ws.category(cod)));
  });
  each("nats", [&](const std::string& n, const json& j) {
    std::string src = str(j, "src"), tgt = str(j, "tgt");
    ws.add_nat(n, src, tgt, parse_nat(j, ws.functor(src), ws.functor(tgt)));
  });
  each("squares", [&](const std::string& n, const json& j) {
    ws.add_square(n, str(j, "h"), str(j, "k"), str(j, "f"), str(j, "g"), str(j, "lam"));
  });
  each("cells", [&](const std::string& n, const json& j) {
    std::vector<std::string> source;
    std::vector<ModuleRef> mods;
    for (const auto& s : arr(j, "source")) {
      source.push_back(as_string(s, "source module"));
      mods.push_back(ws.module(source.back()));
    }
    std::string base = source.empty() ? str(j, "base") : std::string();
    ShapeRef shape = make_shape(mods, source.empty() ? ws.category(base) : nullptr);
    std::string target = str(j, "target"), vf = str(j, "vf"), vg = str(j, "vg");
    Cell c = parse_cell(j, shape, ws.module(target), ws.functor(vf), ws.functor(vg));
    ws.add_cell(n, source, base, target, vf, vg, std::move(c));
  });
  return ws;
}

}  // namespace

Workspace parse_workspace(std::string_view text, const std::string& source) {
  return build_workspace({Document{source, std::string(text)}});
}

Workspace parse_input(const std::vector<std::string>& paths) {
  std::vector<Document> docs;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, p + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    docs.push_back({p, ss.str()});
  }
  return build_workspace(docs);
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize(const Workspace& ws, const std::string& report_json) {
  json root = json::object();
  auto put = [&](const char* kind, const auto& map, const auto& to_json) {
    if (map.empty()) return;
    json a = json::array();
    for (const auto& [n, v] : map) a.push_back(to_json(n, v));
    root[kind] = std::move(a);
  };
  put("categories", ws.categories, [](const std::string& n, const CatRef& c) { return category_json(n, *c); });
  put("functors", ws.functors, functor_json);
  put("modules", ws.modules, module_json);
  put("nats", ws.nats, nat_json);
  put("squares", ws.squares, square_json);
  put("cells", ws.cells, cell_json);
  if (!report_json.empty()) root["report"] = json::parse(report_json);
  return root.dump(2) + "\n";
}

}  // namespace virteq::io
