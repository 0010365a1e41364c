#include "virteq/testkit.hpp"

#include <gtest/gtest.h>

#include "virteq/catalog.hpp"

namespace virteq::testkit {
namespace {

bool is_thin(const FinCat& c) {
  for (int x = 0; x < c.num_objects(); ++x)
    for (int y = 0; y < c.num_objects(); ++y)
      if (c.hom(x, y).size() > 1) return false;
  return true;
}

TEST(TestkitTest, SingleObjectPosetIsPoint) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CatRef c = gen_category(seed, 1, GenStyle::Poset);
    EXPECT_EQ(c->num_objects(), 1);
    EXPECT_EQ(c->num_morphisms(), 1);
  }
}

TEST(TestkitTest, GenerationIsDeterministic) {
  for (GenStyle style : {GenStyle::Poset, GenStyle::QuotientFree})
    for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_EQ(*gen_category(seed, 4, style), *gen_category(seed, 4, style));
  Generator g1(7), g2(7);
  for (int i = 0; i < 10; ++i) {
    CatRef a = g1.category(3), b = g1.category(3);
    CatRef a2 = g2.category(3), b2 = g2.category(3);
    EXPECT_EQ(*a, *a2);
    EXPECT_TRUE(*g1.module(a, b) == *g2.module(a2, b2));
  }
}

TEST(TestkitTest, HundredDrawsAreValidAndBounded) {
  int non_thin = 0;
  for (GenStyle style : {GenStyle::Poset, GenStyle::QuotientFree})
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      CatRef c = gen_category(seed, 4, style);
      EXPECT_LE(c->num_objects(), 4);
      EXPECT_LE(c->num_morphisms(), kMaxGeneratedMorphisms);
      non_thin += !is_thin(*c);
      for (int f = 0; f < c->num_morphisms(); ++f)
        for (int g : c->out_of(c->tgt(f)))
          for (int h : c->out_of(c->tgt(g)))
            EXPECT_EQ(c->compose(h, c->compose(g, f)), c->compose(c->compose(h, g), f));
    }
  EXPECT_GT(non_thin, 5);
}

TEST(TestkitTest, QuotientFreeCollapsesLongPaths) {
  Generator gen(1);
  int longs = 0;
  for (int i = 0; i < 200; ++i) {
    CatRef c = gen.category(5, GenStyle::QuotientFree);
    for (int m = 0; m < c->num_morphisms(); ++m) longs += c->morphism_name(m)[0] == 'z';
  }
  EXPECT_GT(longs, 0);
}

TEST(TestkitTest, NaiveCoendOverPoint) {
  CatRef one = catalog::terminal();
  auto hom = hom_module(one);
  NaiveCoend n = naive_coend(hom, hom);
  EXPECT_EQ(n.classes.at({0, 0}), 1);
}

TEST(TestkitTest, TensorSuitePasses) {
  SuiteOptions opt;
  opt.seed = 11;
  opt.size = 30;
  SuiteReport r = suite_tensor(opt);
  EXPECT_TRUE(r.pass) << r.counterexample;
  EXPECT_GT(r.instances, 30);
}

TEST(TestkitTest, CorruptedTensorIsReportedAtItsEntry) {
  SuiteOptions opt;
  opt.size = 0;
  opt.corrupt_tensor = [](Composite& c) {
    for (std::size_t t = 0; t + 1 < c.cell.values.size(); ++t)
      if (c.cell.values[t] != c.cell.values[t + 1] && c.cell.shape->last_object(t) == c.cell.shape->last_object(t + 1) &&
          c.cell.shape->first_object(t) == c.cell.shape->first_object(t + 1)) {
        std::swap(c.cell.values[t], c.cell.values[t + 1]);
        return;
      }
  };
  CatRef one = catalog::terminal();
  ModuleBuilder mb(one, one);
  mb.add_element(0, 0, "x");
  mb.add_element(0, 0, "y");
  auto m = mb.build();
  Composite fast = tensor(m, m);
  EXPECT_EQ(check_tensor_against_oracle(m, m, fast), "");
  opt.corrupt_tensor(fast);
  EXPECT_TRUE(check_tensor_against_oracle(m, m, fast).empty());

  CatRef two = catalog::arrow();
  auto h = hom_module(two);
  Composite t = tensor(h, h);
  std::swap(t.cell.values[0], t.cell.values[1]);
  std::string msg = check_tensor_against_oracle(h, h, t);
  EXPECT_EQ(msg.rfind("entry (", 0), 0u) << msg;

  SuiteReport r = suite_tensor(opt);
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.counterexample.find("entry ("), std::string::npos) << r.counterexample;
}

TEST(TestkitTest, RightExtensionSuitePasses) {
  SuiteOptions opt;
  opt.seed = 3;
  opt.size = 10;
  SuiteReport r = suite_right_extension(opt);
  EXPECT_TRUE(r.pass) << r.counterexample;
}

TEST(TestkitTest, AdjunctionSuitePasses) {
  SuiteOptions opt;
  opt.seed = 5;
  opt.size = 20;
  SuiteReport r = suite_adjunction(opt);
  EXPECT_TRUE(r.pass) << r.counterexample;
}

TEST(TestkitTest, FinalitySuitePasses) {
  SuiteOptions opt;
  opt.seed = 5;
  opt.size = 30;
  SuiteReport r = suite_finality(opt);
  EXPECT_TRUE(r.pass) << r.counterexample;
}

TEST(TestkitTest, CompositeSuitePasses) {
  SuiteOptions opt;
  opt.seed = 9;
  opt.size = 20;
  SuiteReport r = suite_composite(opt);
  EXPECT_TRUE(r.pass) << r.counterexample;
  EXPECT_GT(r.instances, 20);
}

TEST(TestkitTest, CompositeOracleRejectsNonComposite) {
  CatRef one = catalog::terminal();
  ModuleBuilder mb(one, one);
  mb.add_element(0, 0, "x");
  mb.add_element(0, 0, "y");
  auto m = mb.build();
  auto hom = hom_module(one);
  // (m, hom) ⇒ m sending everything to x is not a composite.
  auto shape = make_shape({m, hom});
  Cell c = make_cell(shape, m, identity_functor(one), identity_functor(one), std::vector<int>(shape->num_tuples(), 0));
  EXPECT_FALSE(is_composite_cell(c));
  EXPECT_EQ(check_composite_oracle(c, {m, tensor(m, hom).module}), "");
}

TEST(TestkitTest, AllSuitesPassAtFullSize) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    SuiteOptions opt;
    opt.seed = seed;
    auto reports = run_suites(opt);
    ASSERT_EQ(reports.size(), 5u);
    std::vector<std::string> names;
    for (const auto& r : reports) {
      EXPECT_TRUE(r.pass) << r.name << ": " << r.counterexample;
      EXPECT_GE(r.instances, 100) << r.name;
      names.push_back(r.name);
    }
    EXPECT_EQ(names, (std::vector<std::string>{"tensor", "right-extension", "adjunction", "finality", "composite"}));
  }
}

}  // namespace
}  // namespace virteq::testkit
