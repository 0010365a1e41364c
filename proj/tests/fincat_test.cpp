#include "virteq/fincat.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <functional>

#include "virteq/catalog.hpp"
#include "virteq/kernels.hpp"

namespace virteq {
namespace {

using catalog::mor;
using catalog::obj;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::ValidationError;
}

// Naive functor count: every assignment of objects and morphisms, filtered
// by make_functor.
int naive_functor_count(const CatRef& a, const CatRef& b) {
  const int no = a->num_objects(), nm = a->num_morphisms();
  const int bo = b->num_objects(), bm = b->num_morphisms();
  int count = 0;
  std::vector<int> objs(no, 0);
  std::function<void(int)> objects = [&](int i) {
    if (i == no) {
      std::vector<int> mors(nm, 0);
      std::function<void(int)> morphisms = [&](int j) {
        if (j == nm) {
          try {
            make_functor(a, b, objs, mors);
            ++count;
          } catch (const Error&) {
          }
          return;
        }
        for (int v = 0; v < bm; ++v) {
          mors[j] = v;
          morphisms(j + 1);
        }
      };
      if (bm == 0 && nm > 0) return;
      morphisms(0);
      return;
    }
    for (int v = 0; v < bo; ++v) {
      objs[i] = v;
      objects(i + 1);
    }
  };
  objects(0);
  return count;
}

TEST(CategoryTest, WalkingArrowHasThreeMorphisms) {
  CatRef c = catalog::arrow();
  EXPECT_EQ(c->num_objects(), 2);
  EXPECT_EQ(c->num_morphisms(), 3);
  EXPECT_EQ(c->morphism_name(c->identity(0)), "id:0");
  EXPECT_EQ(c->hom(obj(c, "0"), obj(c, "1")).size(), 1u);
  EXPECT_EQ(c->hom(obj(c, "1"), obj(c, "0")).size(), 0u);
}

TEST(CategoryTest, EmptyIsValid) {
  CatRef c = CategoryBuilder().build().cat;
  EXPECT_EQ(c->num_objects(), 0);
  EXPECT_EQ(c->num_morphisms(), 0);
}

TEST(CategoryTest, RejectsAssociativityFailure) {
  CategoryBuilder b;
  int x = b.add_object("0"), y = b.add_object("1"), z = b.add_object("2");
  int f = b.add_morphism("f", x, y);
  int f2 = b.add_morphism("f2", x, y);
  int g = b.add_morphism("g", y, y);
  int h = b.add_morphism("h", y, z);
  int p = b.add_morphism("p", x, z);
  int q = b.add_morphism("q", x, z);
  b.set_composite(g, g, g);
  b.set_composite(g, f, f2);
  b.set_composite(g, f2, f2);
  b.set_composite(h, g, h);
  b.set_composite(h, f, p);
  b.set_composite(h, f2, q);
  EXPECT_EQ(kind_of([&] { b.build(); }), ErrorKind::AssocViolation);

  // The same table with p == q is a category.
  CategoryBuilder ok;
  x = ok.add_object("0"), y = ok.add_object("1"), z = ok.add_object("2");
  f = ok.add_morphism("f", x, y);
  f2 = ok.add_morphism("f2", x, y);
  g = ok.add_morphism("g", y, y);
  h = ok.add_morphism("h", y, z);
  p = ok.add_morphism("p", x, z);
  ok.set_composite(g, g, g);
  ok.set_composite(g, f, f2);
  ok.set_composite(g, f2, f2);
  ok.set_composite(h, g, h);
  ok.set_composite(h, f, p);
  ok.set_composite(h, f2, p);
  EXPECT_EQ(ok.build().cat->num_morphisms(), 8);
}

TEST(CategoryTest, RejectsMissingComposite) {
  CategoryBuilder b;
  int x = b.add_object("0"), y = b.add_object("1"), z = b.add_object("2");
  b.add_morphism("f", x, y);
  b.add_morphism("g", y, z);
  EXPECT_EQ(kind_of([&] { b.build(); }), ErrorKind::MissingComposite);
}

TEST(CategoryTest, RejectsBadIdentityComposite) {
  CategoryBuilder b;
  int x = b.add_object("0"), y = b.add_object("1");
  int f = b.add_morphism("f", x, y);
  int f2 = b.add_morphism("f2", x, y);
  b.set_composite(b.identity(y), f, f2);
  EXPECT_EQ(kind_of([&] { b.build(); }), ErrorKind::IdentityViolation);
}

TEST(CategoryTest, RejectsDanglingAndDuplicates) {
  CategoryBuilder b;
  b.add_object("0");
  EXPECT_EQ(kind_of([&] { b.add_morphism("f", 0, 3); }), ErrorKind::DanglingRef);
  b.add_object("0");
  EXPECT_EQ(kind_of([&] { b.build(); }), ErrorKind::DuplicateName);

  CategoryBuilder c;
  int x = c.add_object("x");
  c.add_morphism("id:x", x, x);
  EXPECT_EQ(kind_of([&] { c.build(); }), ErrorKind::DuplicateName);

  CategoryBuilder d;
  d.add_object("a|b");
  EXPECT_EQ(kind_of([&] { d.build(); }), ErrorKind::ValidationError);
}

TEST(CategoryTest, RejectsNotComposableDeclaration) {
  CategoryBuilder b;
  int x = b.add_object("0"), y = b.add_object("1");
  int f = b.add_morphism("f", x, y);
  b.set_composite(f, f, f);
  EXPECT_EQ(kind_of([&] { b.build(); }), ErrorKind::NotComposable);
}

TEST(CategoryTest, CanonicalOrderIsLexicographic) {
  CategoryBuilder b;
  int z = b.add_object("z");
  int a = b.add_object("a");
  b.add_morphism("m", z, a);
  auto built = b.build();
  EXPECT_EQ(built.cat->object_name(0), "a");
  EXPECT_EQ(built.object_index[z], 1);
  for (int i = 1; i < built.cat->num_morphisms(); ++i)
    EXPECT_LT(built.cat->morphism_name(i - 1), built.cat->morphism_name(i));
}

TEST(CategoryTest, CatalogSatisfiesLaws) {
  for (const auto& [name, c] : catalog::all()) {
    for (int f = 0; f < c->num_morphisms(); ++f) {
      EXPECT_EQ(c->compose(f, c->identity(c->src(f))), f) << name;
      EXPECT_EQ(c->compose(c->identity(c->tgt(f)), f), f) << name;
      for (int g : c->out_of(c->tgt(f)))
        for (int h : c->out_of(c->tgt(g)))
          EXPECT_EQ(c->compose(h, c->compose(g, f)), c->compose(c->compose(h, g), f)) << name;
    }
  }
}

TEST(ConstructTest, ProductOfArrows) {
  auto p = product({catalog::arrow(), catalog::arrow()});
  EXPECT_EQ(p.cat->num_objects(), 2 * 2);
  EXPECT_EQ(p.cat->num_morphisms(), 3 * 3);
  for (const auto& pr : p.projections) EXPECT_NO_THROW(make_functor(pr.dom, pr.cod, pr.on_obj, pr.on_mor));
}

TEST(ConstructTest, OppositeIsInvolution) {
  for (const auto& [name, c] : catalog::all()) {
    CatRef op = opposite(c);
    EXPECT_TRUE(*opposite(op) == *c) << name;
    for (int m = 0; m < c->num_morphisms(); ++m) {
      EXPECT_EQ(op->src(m), c->tgt(m));
      EXPECT_EQ(op->morphism_name(m), c->morphism_name(m));
    }
  }
}

TEST(ConstructTest, CoproductAndTerminal) {
  auto s = coproduct({catalog::arrow(), terminal_category()});
  EXPECT_EQ(s.cat->num_objects(), 3);
  EXPECT_EQ(s.cat->num_morphisms(), 4);
  CatRef t = construct(Construction::Terminal, {});
  EXPECT_EQ(t->num_objects(), 1);
  EXPECT_EQ(t->num_morphisms(), 1);
  EXPECT_EQ(kind_of([] { construct(Construction::Opposite, {}); }), ErrorKind::ArityMismatch);
  EXPECT_EQ(kind_of([] { construct(Construction::Terminal, {catalog::arrow()}); }), ErrorKind::ArityMismatch);
}

TEST(ConstructTest, PullbackOfPoints) {
  CatRef two = catalog::arrow();
  auto pb = pullback(catalog::pick(two, "0"), catalog::pick(two, "1"));
  EXPECT_EQ(pb.cat->num_objects(), 0);
  auto same = pullback(identity_functor(two), identity_functor(two));
  EXPECT_EQ(same.cat->num_morphisms(), 3);
}

TEST(FunctorTest, Validation) {
  CatRef two = catalog::arrow();
  using Names = std::map<std::string, std::string>;
  FunctorMap id = make_functor_named(two, two, Names{{"0", "0"}, {"1", "1"}}, Names{{"a", "a"}});
  EXPECT_TRUE(is_identity_functor(id));
  FunctorMap c = make_functor_named(two, two, Names{{"0", "1"}, {"1", "1"}}, Names{{"a", "id:1"}});
  EXPECT_EQ(c, constant_functor(two, two, 1));
  EXPECT_EQ(kind_of([&] { make_functor_named(two, two, Names{{"0", "1"}, {"1", "1"}}, Names{{"a", "a"}}); }),
            ErrorKind::NotFunctorial);
  EXPECT_EQ(kind_of([&] { make_functor_named(two, two, Names{{"0", "0"}, {"1", "1"}}, Names{}); }),
            ErrorKind::DanglingRef);
}

TEST(NatTest, Validation) {
  CatRef two = catalog::arrow();
  FunctorMap p0 = catalog::pick(two, "0"), p1 = catalog::pick(two, "1");
  EXPECT_NO_THROW(make_nat(p0, p1, {mor(two, "a")}));
  EXPECT_EQ(make_nat(p0, p0, {two->identity(0)}), identity_nat(p0));
  EXPECT_EQ(kind_of([&] { make_nat(p1, p0, {mor(two, "a")}); }), ErrorKind::NaturalityViolation);
  EXPECT_TRUE(enumerate_nats(p1, p0).empty());
  EXPECT_EQ(kind_of([&] { make_nat(p0, identity_functor(two), {0}); }), ErrorKind::NotParallel);
}

TEST(NatTest, NaturalitySquareChecked) {
  CatRef two = catalog::arrow();
  FunctorMap id = identity_functor(two);
  FunctorMap c1 = constant_functor(two, two, 1);
  // id => const 1 has the unique choice (a, id_1); id_0 at 0 is mistyped.
  EXPECT_EQ(enumerate_nats(id, c1).size(), 1u);
  FunctorMap c0 = constant_functor(two, two, 0);
  EXPECT_EQ(enumerate_nats(c0, id).size(), 1u);
  // The parallel pair gives a genuine naturality failure.
  CatRef pp = catalog::parallel_pair();
  using Names = std::map<std::string, std::string>;
  FunctorMap up = make_functor_named(two, pp, Names{{"0", "0"}, {"1", "1"}}, Names{{"a", "u"}});
  FunctorMap vp = make_functor_named(two, pp, Names{{"0", "0"}, {"1", "1"}}, Names{{"a", "v"}});
  EXPECT_EQ(kind_of([&] { make_nat(up, vp, {pp->identity(0), pp->identity(1)}); }), ErrorKind::NaturalityViolation);
}

TEST(EnumerateTest, FunctorCounts) {
  CatRef two = catalog::arrow();
  EXPECT_EQ(enumerate_functors(terminal_category(), two).size(), 2u);
  EXPECT_EQ(enumerate_functors(two, two).size(), 3u);
  EXPECT_EQ(enumerate_functors(empty_category(), two).size(), 1u);
  EXPECT_EQ(enumerate_functors(two, empty_category()).size(), 0u);
}

TEST(EnumerateTest, FunctorsMatchNaiveSearch) {
  for (const auto& a : catalog::small())
    for (const auto& b : catalog::small()) {
      auto fs = enumerate_functors(a.cat, b.cat);
      EXPECT_EQ(static_cast<int>(fs.size()), naive_functor_count(a.cat, b.cat)) << a.name << " " << b.name;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        EXPECT_NO_THROW(make_functor(fs[i].dom, fs[i].cod, fs[i].on_obj, fs[i].on_mor));
        if (i > 0) {
          EXPECT_TRUE(fs[i - 1].on_obj < fs[i].on_obj ||
                      (fs[i - 1].on_obj == fs[i].on_obj && fs[i - 1].on_mor < fs[i].on_mor));
        }
      }
    }
}

TEST(EnumerateTest, Deterministic) {
  auto a = enumerate_functors(catalog::square(), catalog::diamond());
  auto b = enumerate_functors(catalog::square(), catalog::diamond());
  EXPECT_EQ(a, b);
}

TEST(EnumerateTest, NatCounts) {
  CatRef two = catalog::arrow();
  FunctorMap id = identity_functor(two);
  EXPECT_EQ(enumerate_nats(id, id).size(), 1u);
  FunctorMap c0 = constant_functor(two, two, 0), c1 = constant_functor(two, two, 1);
  EXPECT_EQ(enumerate_nats(c0, c1).size(), 1u);
  EXPECT_TRUE(enumerate_nats(c1, c0).empty());
}

TEST(EnumerateTest, BudgetIsEnforced) {
  setenv("VIRTEQ_MAX_ENUM", "5", 1);
  EXPECT_EQ(kind_of([] { enumerate_functors(catalog::square(), catalog::diamond()); }),
            ErrorKind::EnumerationBudgetExceeded);
  unsetenv("VIRTEQ_MAX_ENUM");
  EXPECT_FALSE(enumerate_functors(catalog::square(), catalog::diamond()).empty());
}

TEST(KernelTest, SerialAndParallelSolversAgree) {
  for (const auto& a : catalog::all())
    for (const auto& b : catalog::all()) {
      if (a.cat->num_objects() > 4) continue;
      const FinCat& B = *b.cat;
      kernels::Csp csp;
      std::vector<int> objs(B.num_objects());
      for (int i = 0; i < B.num_objects(); ++i) objs[i] = i;
      for (int o = 0; o < a.cat->num_objects(); ++o) csp.add_var(objs);
      for (int m = 0; m < a.cat->num_morphisms(); ++m) {
        if (a.cat->is_identity(m)) continue;
        int s = a.cat->src(m), t = a.cat->tgt(m);
        std::vector<int> scope{s, t};
        csp.add_check(scope, [&B, s, t](const int* x) { return !B.hom(x[s], x[t]).empty(); });
      }
      Budget b1("serial"), b2("omp");
      auto x = kernels::serial::solve(csp, b1);
      auto y = kernels::omp::solve(csp, b2);
      EXPECT_EQ(x, y) << a.name << " " << b.name;
      EXPECT_EQ(b1.used(), b2.used());
    }
}

TEST(FunctorCategoryTest, Counts) {
  CatRef two = catalog::arrow();
  auto fc = functor_category(two, two);
  EXPECT_EQ(fc.cat->num_objects(), 3);
  EXPECT_EQ(fc.cat->num_morphisms(), 6);
  auto arrows = functor_category(two, catalog::diamond());
  // Pairs x <= y in the diamond.
  EXPECT_EQ(arrows.cat->num_objects(), 9);
  auto t = functor_category(empty_category(), two);
  EXPECT_EQ(t.cat->num_objects(), 1);
  EXPECT_EQ(t.cat->num_morphisms(), 1);
}

TEST(FunctorCategoryTest, PointExponentIsIsomorphicToBase) {
  for (const auto& [name, e] : catalog::all()) {
    auto fc = functor_category(terminal_category(), e);
    // Evaluation at the point.
    FunctorMap ev{fc.cat, e, std::vector<int>(fc.cat->num_objects()), std::vector<int>(fc.cat->num_morphisms())};
    for (int o = 0; o < fc.cat->num_objects(); ++o) ev.on_obj[o] = fc.functors[o].obj(0);
    for (int m = 0; m < fc.cat->num_morphisms(); ++m) ev.on_mor[m] = fc.nats[m].components[0];
    FunctorMap checked = make_functor(ev.dom, ev.cod, ev.on_obj, ev.on_mor);
    EXPECT_TRUE(is_isomorphism(checked)) << name;
  }
}

TEST(FunctorCategoryTest, LookupRoundTrip) {
  auto fc = functor_category(catalog::arrow(), catalog::diamond());
  for (int o = 0; o < fc.cat->num_objects(); ++o) EXPECT_EQ(fc.object_of(fc.functors[o]), o);
  for (int m = 0; m < fc.cat->num_morphisms(); ++m) {
    EXPECT_EQ(fc.morphism_of(fc.nats[m]), m);
    EXPECT_EQ(fc.cat->src(m), fc.object_of(fc.nats[m].src));
  }
  for (int f = 0; f < fc.cat->num_morphisms(); ++f)
    for (int g : fc.cat->out_of(fc.cat->tgt(f)))
      EXPECT_EQ(fc.nats[fc.cat->compose(g, f)], vertical(fc.nats[g], fc.nats[f]));
}

TEST(LimitTest, SpecExamples) {
  CatRef two = catalog::arrow();
  FunctorMap empty_d{empty_category(), two, {}, {}};
  auto l = limit_of_diagram(empty_d);
  ASSERT_TRUE(l);
  EXPECT_EQ(l->apex, obj(two, "1"));

  auto single = limit_of_diagram(catalog::pick(two, "0"));
  ASSERT_TRUE(single);
  EXPECT_EQ(single->apex, 0);
  EXPECT_EQ(single->legs, std::vector<int>{two->identity(0)});

  FunctorMap pair = make_functor(catalog::discrete2(), two, {0, 1}, {-1, -1});
  auto prod = limit_of_diagram(pair);
  ASSERT_TRUE(prod);
  EXPECT_EQ(prod->apex, obj(two, "0"));

  auto co = colimit_of_diagram(empty_d);
  ASSERT_TRUE(co);
  EXPECT_EQ(co->apex, obj(two, "0"));
}

TEST(LimitTest, MissingLimits) {
  CatRef d2 = catalog::discrete2();
  FunctorMap empty_d{empty_category(), d2, {}, {}};
  EXPECT_FALSE(limit_of_diagram(empty_d));
  CatRef pp = catalog::parallel_pair();
  FunctorMap both = make_functor(d2, pp, {0, 1}, {-1, -1});
  // 0 x 1 would need a unique mediating map into 1; there are two.
  EXPECT_FALSE(limit_of_diagram(both));
}

TEST(LimitTest, UniversalConesFactorEveryConeUniquely) {
  for (const auto& j : catalog::small())
    for (const auto& c : catalog::all()) {
      if (j.cat->num_objects() > 2 || c.cat->num_objects() > 4) continue;
      for (const auto& d : enumerate_functors(j.cat, c.cat))
        for (ConeKind kind : {ConeKind::Limit, ConeKind::Colimit}) {
          auto u = universal_cone(d, kind);
          if (!u) continue;
          EXPECT_TRUE(is_cone(d, *u, kind));
          for (const auto& other : enumerate_cones(d, kind)) EXPECT_TRUE(factor_through(d, *u, other, kind));
        }
    }
}

TEST(LimitTest, DiamondMeets) {
  CatRef dm = catalog::diamond();
  FunctorMap ab = make_functor(catalog::discrete2(), dm, {obj(dm, "a"), obj(dm, "b")}, {-1, -1});
  auto meet = limit_of_diagram(ab);
  ASSERT_TRUE(meet);
  EXPECT_EQ(dm->object_name(meet->apex), "bot");
  auto join = colimit_of_diagram(ab);
  ASSERT_TRUE(join);
  EXPECT_EQ(dm->object_name(join->apex), "top");
}

TEST(ConnectedTest, Examples) {
  EXPECT_TRUE(is_connected(*catalog::arrow()));
  EXPECT_FALSE(is_connected(*empty_category()));
  EXPECT_FALSE(is_connected(*catalog::discrete2()));
  EXPECT_TRUE(is_connected(*catalog::span()));
  EXPECT_EQ(count_components(*catalog::discrete2()), 2);
}

TEST(NatTest, Whiskering) {
  CatRef two = catalog::arrow();
  FunctorMap p0 = catalog::pick(two, "0"), p1 = catalog::pick(two, "1");
  NatTrans alpha = make_nat(p0, p1, {mor(two, "a")});
  FunctorMap bang = to_terminal(two);
  NatTrans w = whisker(alpha, bang);
  EXPECT_NO_THROW(make_nat(w.src, w.tgt, w.components));
  NatTrans w2 = whisker(identity_functor(two), alpha);
  EXPECT_EQ(w2, alpha);
  EXPECT_EQ(vertical(identity_nat(p1), alpha), alpha);
}

TEST(IsoTest, Inverses) {
  CatRef two = catalog::arrow();
  EXPECT_FALSE(is_iso(*two, mor(two, "a")));
  EXPECT_TRUE(is_iso(*two, two->identity(0)));
  CategoryBuilder b;
  int x = b.add_object("x"), y = b.add_object("y");
  int f = b.add_morphism("f", x, y), g = b.add_morphism("g", y, x);
  b.set_composite(g, f, b.identity(x));
  b.set_composite(f, g, b.identity(y));
  auto built = b.build();
  EXPECT_EQ(inverse_of(*built.cat, built.morphism_index[f]), built.morphism_index[g]);
}

}  // namespace
}  // namespace virteq
