#include "virteq/module.hpp"

#include <gtest/gtest.h>

#include "support.hpp"
#include "virteq/calculus.hpp"
#include "virteq/catalog.hpp"
#include "virteq/cell.hpp"
#include "virteq/comma.hpp"

namespace virteq {
namespace {

using catalog::mor;
using catalog::obj;
using catalog::pick;
using test::kind_of;

// A module 𝟙 ⇸ 𝟙 with n elements.
ModuleRef set_module(int n, const std::string& prefix = "x") {
  ModuleBuilder mb(catalog::terminal(), catalog::terminal());
  for (int i = 0; i < n; ++i) mb.add_element(0, 0, prefix + std::to_string(i));
  return mb.build();
}

TEST(ModuleTest, SingletonOverPoint) {
  auto m = set_module(1);
  EXPECT_EQ(m->num_elements(), 1);
  EXPECT_EQ(m->entry_size(0, 0), 1);
}

TEST(ModuleTest, HandWrittenHomTableEqualsHomModule) {
  CatRef two = catalog::arrow();
  int o0 = obj(two, "0"), o1 = obj(two, "1"), a = mor(two, "a");
  ModuleBuilder mb(two, two);
  int i0 = mb.add_element(o0, o0, "(0,0,id:0)");
  int ia = mb.add_element(o0, o1, "(1,0,a)");
  int i1 = mb.add_element(o1, o1, "(1,1,id:1)");
  mb.set_left(a, i0, ia);
  mb.set_right(i1, a, ia);
  EXPECT_EQ(*mb.build(), *hom_module(two));
}

TEST(ModuleTest, RejectsNonAssociativeLeftAction) {
  CatRef c = catalog::composable_pair();
  int o0 = obj(c, "0"), o1 = obj(c, "1"), o2 = obj(c, "2");
  ModuleBuilder mb(c, catalog::terminal());
  int x0 = mb.add_element(0, o0, "x0");
  int x1 = mb.add_element(0, o1, "x1");
  int x2 = mb.add_element(0, o2, "x2");
  int y2 = mb.add_element(0, o2, "y2");
  mb.set_left(mor(c, "f"), x0, x1);
  mb.set_left(mor(c, "g"), x1, x2);
  mb.set_left(mor(c, "gf"), x0, y2);
  EXPECT_EQ(kind_of([&] { mb.build(); }), ErrorKind::ActionLawViolation);
}

TEST(ModuleTest, RejectsPartialAndMistypedActions) {
  CatRef two = catalog::arrow();
  int o0 = obj(two, "0"), a = mor(two, "a");
  ModuleBuilder mb(two, catalog::terminal());
  int x = mb.add_element(0, o0, "x");
  int y = mb.add_element(0, o0, "y");
  EXPECT_EQ(kind_of([&] { mb.build(); }), ErrorKind::ActionNotTotal);
  EXPECT_EQ(kind_of([&] { mb.set_left(a, x, 7); }), ErrorKind::DanglingRef);
  EXPECT_EQ(kind_of([&] { mb.set_left(two->identity(o0), x, y); }), ErrorKind::ActionLawViolation);
  mb.set_left(a, x, y);
  mb.set_left(a, y, y);
  EXPECT_EQ(kind_of([&] { mb.build(); }), ErrorKind::ActionLawViolation);
}

TEST(ModuleTest, RejectsBrokenInterchange) {
  // A = B = 𝟚; E(0,0) = {p}, E(0,1) = {q, r}, E(1,1) = {s}.
  CatRef two = catalog::arrow();
  int o0 = obj(two, "0"), o1 = obj(two, "1"), a = mor(two, "a");
  ModuleBuilder mb(two, two);
  int p = mb.add_element(o0, o0, "p");
  int q = mb.add_element(o0, o1, "q");
  int r = mb.add_element(o0, o1, "r");
  int s = mb.add_element(o1, o1, "s");
  mb.set_left(a, p, q);
  mb.set_right(s, a, r);
  EXPECT_NO_THROW(mb.build());  // no composable (α, β) pair acts twice
  ModuleBuilder bad(two, two);
  int p2 = bad.add_element(o0, o0, "p");
  int q2 = bad.add_element(o0, o1, "q");
  int r2 = bad.add_element(o0, o1, "r");
  int u2 = bad.add_element(o1, o0, "u");
  int s2 = bad.add_element(o1, o1, "s");
  bad.set_left(a, p2, q2);
  bad.set_left(a, u2, s2);
  bad.set_right(s2, a, r2);
  bad.set_right(u2, a, p2);
  // (a·u)·a = s·a = r but a·(u·a) = a·p = q.
  EXPECT_EQ(kind_of([&] { bad.build(); }), ErrorKind::ActionLawViolation);
}

TEST(ModuleTest, RejectsDuplicateElementNames) {
  ModuleBuilder mb(catalog::terminal(), catalog::terminal());
  mb.add_element(0, 0, "x");
  mb.add_element(0, 0, "x");
  EXPECT_EQ(kind_of([&] { mb.build(); }), ErrorKind::DuplicateName);
}

TEST(HomModuleTest, EntrySizesOfArrow) {
  CatRef two = catalog::arrow();
  auto h = hom_module(two);
  int o0 = obj(two, "0"), o1 = obj(two, "1");
  EXPECT_EQ(h->entry_size(o0, o0), 1);
  EXPECT_EQ(h->entry_size(o0, o1), 1);
  EXPECT_EQ(h->entry_size(o1, o0), 0);
  EXPECT_EQ(h->entry_size(o1, o1), 1);
  EXPECT_EQ(hom_module(catalog::terminal())->num_elements(), 1);
}

TEST(HomModuleTest, ElementsOfHomAreTheArrowCategory) {
  for (const auto& [name, a] : catalog::all()) {
    SpanRep el = category_of_elements(hom_module(a));
    CommaData arrows = arrow_category(a);
    SpanRep as_span{arrows.cat, arrows.p1, arrows.p0};
    EXPECT_TRUE(is_tsdf(as_span).ok) << name;
    EXPECT_TRUE(find_span_iso(el, as_span).has_value()) << name;
    EXPECT_EQ(el.total->num_morphisms(), arrows.cat->num_morphisms()) << name;
    EXPECT_EQ(*span_to_module(as_span), *hom_module(a)) << name;
  }
}

TEST(RepresentableTest, Examples) {
  CatRef two = catalog::arrow();
  int o0 = obj(two, "0"), o1 = obj(two, "1");
  auto cov = representable(pick(two, "1"), Variance::Covariant);
  EXPECT_EQ(cov->entry_size(o0, 0), 1);
  EXPECT_EQ(cov->entry_size(o1, 0), 1);
  auto con = representable(pick(two, "0"), Variance::Contravariant);
  EXPECT_EQ(con->entry_size(0, o0), 1);
  EXPECT_EQ(con->entry_size(0, o1), 1);
  for (const auto& [name, a] : catalog::all())
    EXPECT_EQ(*representable(identity_functor(a), Variance::Covariant), *hom_module(a)) << name;
}

TEST(CommaModuleTest, Examples) {
  CatRef two = catalog::arrow();
  auto id = identity_functor(two);
  EXPECT_EQ(*comma_module(id, id), *hom_module(two));
  EXPECT_EQ(comma_module(pick(two, "0"), pick(two, "1"))->entry_size(0, 0), 1);
  EXPECT_EQ(comma_module(pick(two, "1"), pick(two, "0"))->entry_size(0, 0), 0);
  EXPECT_EQ(kind_of([&] { comma_module(pick(two, "0"), pick(catalog::terminal(), "*")); }),
            ErrorKind::CodomainMismatch);
}

TEST(CommaModuleTest, FibersOfTheCommaAreHomSets) {
  for (const auto& nf : catalog::small_functors())
    for (const auto& ng : catalog::small_functors()) {
      if (!same_category(nf.functor.cod, ng.functor.cod)) continue;
      const auto& f = nf.functor;
      const auto& g = ng.functor;
      CommaData cd = comma(f, g);
      auto m = comma_module(f, g);
      EXPECT_EQ(*span_to_module(SpanRep{cd.cat, cd.p1, cd.p0}), *m) << nf.name << " " << ng.name;
      for (int b = 0; b < f.dom->num_objects(); ++b)
        for (int c = 0; c < g.dom->num_objects(); ++c)
          EXPECT_EQ(m->entry_size(b, c), static_cast<int>(f.cod->hom(f.obj(b), g.obj(c)).size()));
    }
}

TEST(RestrictTest, Examples) {
  CatRef two = catalog::arrow();
  auto h = hom_module(two);
  auto id = identity_functor(two);
  Restriction same = restrict_module(h, id, id);
  EXPECT_EQ(*same.module, *h);
  EXPECT_EQ(*same.cell, identity_cell(h));
  EXPECT_EQ(restrict_module(h, pick(two, "0"), pick(two, "1")).module->num_elements(), 0);
  Restriction r = restrict_module(h, pick(two, "1"), pick(two, "0"));
  EXPECT_EQ(r.module->num_elements(), 1);
  EXPECT_NO_THROW(validate_cell(*r.cell));
  EXPECT_EQ(kind_of([&] { restrict_module(h, pick(catalog::discrete2(), "0"), id); }), ErrorKind::BoundaryMismatch);
}

TEST(RestrictTest, NonInjectiveRestrictionIsAModule) {
  CatRef two = catalog::arrow();
  auto h = hom_module(two);
  auto bang = constant_functor(two, two, obj(two, "1"));
  Restriction r = restrict_module(h, bang, identity_functor(two));
  EXPECT_EQ(r.module->num_elements(), 4);  // 𝟚(b, 1) for each of the two a
  EXPECT_NO_THROW(validate_cell(*r.cell));
}

TEST(ElementsTest, Examples) {
  CatRef two = catalog::arrow();
  ModuleBuilder mb(two, two);
  SpanRep empty = category_of_elements(mb.build());
  EXPECT_EQ(empty.total->num_objects(), 0);
  SpanRep rep = category_of_elements(representable(pick(two, "1"), Variance::Covariant));
  EXPECT_EQ(rep.total->num_objects(), 2);
  EXPECT_EQ(rep.total->num_morphisms(), 3);
  EXPECT_TRUE(is_tsdf(rep).ok);
}

TEST(SpanTest, RoundTripOfHom) {
  CatRef two = catalog::arrow();
  auto h = hom_module(two);
  auto back = span_to_module(category_of_elements(h));
  EXPECT_TRUE(find_module_iso(back, h).has_value());
}

TEST(SpanTest, PullbackOfTwoModulesIsNotAModule) {
  CatRef two = catalog::arrow();
  SpanRep el = category_of_elements(hom_module(two));
  PullbackCategory pb = pullback(el.p, el.q);
  SpanRep s{pb.cat, compose(el.q, pb.pi1), compose(el.p, pb.pi2)};
  TsdfReport r = is_tsdf(s);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.witness.empty());
  EXPECT_EQ(kind_of([&] { span_to_module(s); }), ErrorKind::NotDiscreteFibration);
}

TEST(SpanTest, NonDiscreteFiberAndIdentitySpan) {
  CatRef two = catalog::arrow();
  SpanRep fiber{two, to_terminal(two), to_terminal(two)};
  EXPECT_FALSE(is_tsdf(fiber).ok);
  auto id = identity_functor(two);
  EXPECT_FALSE(is_tsdf(SpanRep{two, id, id}).ok);
}

TEST(TensorTest, OverThePointIsAProduct) {
  auto t = tensor(set_module(2, "x"), set_module(3, "y"));
  EXPECT_EQ(t.module->num_elements(), 6);
  EXPECT_TRUE(is_composite_cell(t.cell));
  EXPECT_EQ(t.module->element_name(0), "(x0,y0)");
}

TEST(TensorTest, UnitLawsOnCatalogHoms) {
  for (const auto& [name, a] : catalog::all()) {
    auto h = hom_module(a);
    auto left = tensor(h, h);
    EXPECT_TRUE(find_module_iso(left.module, h).has_value()) << name;
    EXPECT_TRUE(is_composite_cell(action_cell(h, true, false))) << name;
    EXPECT_TRUE(is_composite_cell(action_cell(h, true, true))) << name;
  }
}

TEST(TensorTest, RepresentablesCompose) {
  CatRef two = catalog::arrow();
  CatRef three = catalog::composable_pair();
  auto f = pick(two, "0");
  auto g = make_functor_named(two, three, {{"0", "1"}, {"1", "2"}}, {{"a", "g"}});
  auto t = tensor(representable(f, Variance::Covariant), representable(g, Variance::Covariant));
  EXPECT_TRUE(find_module_iso(t.module, representable(compose(g, f), Variance::Covariant)).has_value());
}

TEST(TensorTest, MiddleMismatch) {
  EXPECT_EQ(kind_of([] { tensor(hom_module(catalog::arrow()), hom_module(catalog::terminal())); }),
            ErrorKind::MiddleMismatch);
}

TEST(TensorTest, SerialAndParallelAgree) {
  CatRef sq = catalog::square();
  auto h = hom_module(sq);
  auto a = tensor_many({h, h, h}, nullptr, Exec::Serial);
  auto b = tensor_many({h, h, h}, nullptr, Exec::Parallel);
  EXPECT_EQ(*a.module, *b.module);
  EXPECT_EQ(a.cell, b.cell);
}

TEST(RightExtensionTest, OverThePoint) {
  auto r = right_extension_module(set_module(2), set_module(3));
  EXPECT_EQ(r.module->num_elements(), 9);
  EXPECT_NO_THROW(validate_cell(r.counit));
}

TEST(RightExtensionTest, AlongHomIsTheModule) {
  for (const auto& [name, a] : catalog::all()) {
    auto h = hom_module(a);
    auto r = right_extension_module(h, h);
    EXPECT_TRUE(find_module_iso(r.module, h).has_value()) << name;
  }
}

TEST(RightExtensionTest, EmptyColumnGivesSingletons) {
  CatRef two = catalog::arrow();
  ModuleBuilder kb(catalog::terminal(), two);  // K(b, *) = ∅ for all b
  auto r = right_extension_module(kb.build(), set_module(3));
  EXPECT_EQ(r.module->entry_size(0, obj(two, "0")), 1);
  EXPECT_EQ(r.module->entry_size(0, obj(two, "1")), 1);
}

TEST(RightExtensionTest, DomainMismatch) {
  EXPECT_EQ(kind_of([] { right_extension_module(hom_module(catalog::arrow()), set_module(1)); }),
            ErrorKind::DomainMismatch);
}

TEST(CellTest, ValidationExamples) {
  CatRef two = catalog::arrow();
  auto h = hom_module(two);
  EXPECT_NO_THROW(validate_cell(identity_cell(h)));

  // Nullary cell 𝟙 ⇒ hom(𝟚) with component the arrow 0 → 1: the arrow lives in
  // the entry (vg *, vf *) = (0, 1).
  auto shape = make_shape({}, catalog::terminal());
  int arrow = hom_element(*h, mor(two, "a"));
  EXPECT_NO_THROW(make_cell(shape, h, pick(two, "1"), pick(two, "0"), std::vector<int>{arrow}));
  EXPECT_EQ(kind_of([&] { make_cell(shape, h, pick(two, "0"), pick(two, "1"), std::vector<int>{arrow}); }),
            ErrorKind::BoundaryMismatch);

  // Perturbing the identity cell on hom of the parallel pair.
  CatRef par = catalog::parallel_pair();
  auto hp = hom_module(par);
  Cell swap = identity_cell(hp);
  int u = hom_element(*hp, mor(par, "u")), v = hom_element(*hp, mor(par, "v"));
  for (auto& x : swap.values)
    if (x == u) x = v;
  EXPECT_EQ(kind_of([&] { validate_cell(swap); }), ErrorKind::NaturalityViolation);
}

TEST(CellTest, EnumerationExamples) {
  auto h1 = hom_module(catalog::terminal());
  EXPECT_EQ(count_cells(make_shape({h1}), h1, identity_functor(catalog::terminal()),
                        identity_functor(catalog::terminal())),
            1u);
  CatRef two = catalog::arrow();
  auto id = identity_functor(two);
  EXPECT_EQ(count_cells(make_shape({}, two), hom_module(two), id, id), 1u);
}

TEST(CellTest, YonedaCountsOnCatalog) {
  for (const auto& nf : catalog::small_functors())
    for (const auto& ng : catalog::small_functors()) {
      const auto& f = nf.functor;
      const auto& g = ng.functor;
      if (!same_category(f.dom, g.dom) || !same_category(f.cod, g.cod)) continue;
      auto bf = representable(f, Variance::Covariant);
      auto bg = representable(g, Variance::Covariant);
      auto cells = count_cells(make_shape({bf}), bg, identity_functor(f.dom), identity_functor(f.cod));
      EXPECT_EQ(cells, enumerate_nats(f, g).size()) << nf.name << " " << ng.name;
    }
}

TEST(CellTest, SubstitutionUnitLaws) {
  CatRef sq = catalog::square();
  auto h = hom_module(sq);
  Cell act = action_cell(h, true, false);
  Cell id = identity_cell(h);
  EXPECT_EQ(substitute_cells(act, {id, id}), act);
  EXPECT_EQ(substitute_cells(id, {act}), act);
}

TEST(CellTest, SubstitutionIsAssociative) {
  CatRef c = catalog::composable_pair();
  auto h = hom_module(c);
  Cell act = action_cell(h, true, false);  // (h, h) ⇒ h
  Cell id = identity_cell(h);
  Cell left = substitute_cells(act, {substitute_cells(act, {id, id}), id});
  Cell right = substitute_cells(act, {id, substitute_cells(act, {id, id})});
  EXPECT_EQ(left, right);
  EXPECT_NO_THROW(validate_cell(left));
  EXPECT_EQ(substitute_cells(substitute_cells(act, {act, id}), {id, id, id}), left);
  EXPECT_EQ(kind_of([&] { substitute_cells(act, {id}); }), ErrorKind::BoundaryMismatch);
}

TEST(CellTest, CompositeDetection) {
  CatRef two = catalog::arrow();
  auto h = hom_module(two);
  auto t = tensor(h, h);
  EXPECT_TRUE(is_composite_cell(t.cell));
  Cell act = action_cell(h, true, false);
  EXPECT_TRUE(is_composite_cell(act));
  Cell shifted = identity_cell(h);
  shifted.vf = constant_functor(two, two, 0);
  EXPECT_EQ(kind_of([&] { is_composite_cell(shifted); }), ErrorKind::NonIdentityBoundary);
}

TEST(CellTest, RestrictionIsCartesian) {
  CatRef two = catalog::arrow();
  CatRef one = catalog::terminal();
  auto h = hom_module(two);
  auto r = restrict_module_data(h, pick(two, "1"), pick(two, "0"));
  auto id1 = identity_functor(one);
  auto into_h = enumerate_cells(make_shape({}, one), h, pick(two, "1"), pick(two, "0"));
  auto into_r = enumerate_cells(make_shape({}, one), r.module, id1, id1);
  ASSERT_EQ(into_h.size(), 1u);
  EXPECT_EQ(into_r.size(), into_h.size());
  for (const auto& c : into_h) {
    Cell f = factor_through_restriction(c, r, id1, id1);
    EXPECT_NO_THROW(validate_cell(f));
    EXPECT_EQ(substitute_cells(*r.cell, {f}), c);
  }
}

}  // namespace
}  // namespace virteq
