#include "virteq/catalog.hpp"

namespace virteq::catalog {

CatRef poset(const std::vector<std::string>& elements, const std::vector<std::pair<int, int>>& covers) {
  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) le[i][i] = 1;
  for (auto [x, y] : covers) le[x][y] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && le[i][j] && le[j][i]) throw Error(ErrorKind::ValidationError, "poset relation has a cycle");

  CategoryBuilder b;
  for (const auto& e : elements) b.add_object(e);
  std::vector<std::vector<int>> mor(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    mor[i][i] = b.identity(i);
    for (int j = 0; j < n; ++j)
      if (i != j && le[i][j]) mor[i][j] = b.add_morphism(elements[i] + "<" + elements[j], i, j);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (i != j && j != k && le[i][j] && le[j][k]) b.set_composite(mor[j][k], mor[i][j], mor[i][k]);
  return b.build().cat;
}

CatRef empty() { return empty_category(); }

CatRef terminal() { return terminal_category(); }

CatRef arrow() {
  static const CatRef c = [] {
    CategoryBuilder b;
    int x = b.add_object("0"), y = b.add_object("1");
    b.add_morphism("a", x, y);
    return b.build().cat;
  }();
  return c;
}

CatRef composable_pair() {
  static const CatRef c = [] {
    CategoryBuilder b;
    int x = b.add_object("0"), y = b.add_object("1"), z = b.add_object("2");
    int f = b.add_morphism("f", x, y);
    int g = b.add_morphism("g", y, z);
    int gf = b.add_morphism("gf", x, z);
    b.set_composite(g, f, gf);
    return b.build().cat;
  }();
  return c;
}

CatRef parallel_pair() {
  static const CatRef c = [] {
    CategoryBuilder b;
    int x = b.add_object("0"), y = b.add_object("1");
    b.add_morphism("u", x, y);
    b.add_morphism("v", x, y);
    return b.build().cat;
  }();
  return c;
}

CatRef span() {
  static const CatRef c = [] {
    CategoryBuilder b;
    int l = b.add_object("l"), s = b.add_object("s"), r = b.add_object("r");
    b.add_morphism("p", s, l);
    b.add_morphism("q", s, r);
    return b.build().cat;
  }();
  return c;
}

CatRef cospan() {
  static const CatRef c = [] {
    CategoryBuilder b;
    int l = b.add_object("l"), m = b.add_object("c"), r = b.add_object("r");
    b.add_morphism("p", l, m);
    b.add_morphism("q", r, m);
    return b.build().cat;
  }();
  return c;
}

CatRef square() {
  static const CatRef c = poset({"00", "01", "10", "11"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  return c;
}

CatRef discrete2() {
  static const CatRef c = [] {
    CategoryBuilder b;
    b.add_object("0");
    b.add_object("1");
    return b.build().cat;
  }();
  return c;
}

CatRef diamond() {
  static const CatRef c = poset({"a", "b", "bot", "top"}, {{2, 0}, {2, 1}, {0, 3}, {1, 3}});
  return c;
}

const std::vector<Named>& all() {
  static const std::vector<Named> v = {
      {"empty", empty()},         {"terminal", terminal()},   {"arrow", arrow()},
      {"composable_pair", composable_pair()}, {"parallel_pair", parallel_pair()},
      {"span", span()},           {"cospan", cospan()},       {"square", square()},
      {"discrete2", discrete2()}, {"diamond", diamond()},
  };
  return v;
}

const std::vector<Named>& small() {
  static const std::vector<Named> v = {
      {"empty", empty()}, {"terminal", terminal()}, {"arrow", arrow()},
      {"discrete2", discrete2()}, {"parallel_pair", parallel_pair()},
  };
  return v;
}

const std::vector<NamedFunctor>& small_functors() {
  static const std::vector<NamedFunctor> v = [] {
    std::vector<NamedFunctor> out;
    for (const auto& a : small())
      for (const auto& b : small()) {
        auto fs = enumerate_functors(a.cat, b.cat);
        for (std::size_t i = 0; i < fs.size(); ++i)
          out.push_back({a.name + "->" + b.name + "#" + std::to_string(i), std::move(fs[i])});
      }
    return out;
  }();
  return v;
}

int obj(const CatRef& c, const std::string& name) { return c->object_index(name); }

int mor(const CatRef& c, const std::string& name) { return c->morphism_index(name); }

FunctorMap pick(const CatRef& c, const std::string& object) { return point(c, c->object_index(object)); }

}  // namespace virteq::catalog
