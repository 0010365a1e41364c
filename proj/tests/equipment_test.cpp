#include "virteq/equipment.hpp"

#include <gtest/gtest.h>

#include "support.hpp"
#include "virteq/catalog.hpp"
#include "virteq/comma.hpp"

namespace virteq {
namespace {

using catalog::obj;
using catalog::pick;
using test::kind_of;

std::vector<Cell> cells_of(const std::vector<ModuleRef>& source, const ModuleRef& target, const FunctorMap& vf,
                           const FunctorMap& vg, const CatRef& base = nullptr) {
  return enumerate_cells(make_shape(source, base), target, vf, vg);
}

std::vector<FunctorMap> functors_between(const CatRef& a, const CatRef& b) { return enumerate_functors(a, b); }

TEST(EquipmentTest, UnitCellOverPoint) {
  Cell iota = nullary_unit_cell(catalog::terminal());
  ASSERT_EQ(iota.values.size(), 1u);
  EXPECT_EQ(iota.values[0], hom_element(*iota.target, 0));
  validate_cell(iota);
}

TEST(EquipmentTest, UnitCellOverArrow) {
  CatRef two = catalog::arrow();
  Cell iota = nullary_unit_cell(two);
  validate_cell(iota);
  for (int a = 0; a < two->num_objects(); ++a)
    EXPECT_EQ(iota.values[a], hom_element(*iota.target, two->identity(a)));
}

TEST(EquipmentTest, IdentityOnHomFactorsToCompositionCell) {
  for (const auto& named : catalog::small()) {
    auto h = hom_module(named.cat);
    Cell id = identity_cell(h);
    EXPECT_EQ(factor_through_unit(id, 0), action_cell(h, true, false)) << named.name;
    EXPECT_EQ(factor_through_unit(id, 1), action_cell(h, false, true)) << named.name;
  }
}

TEST(EquipmentTest, UnitIsCocartesianOnProbes) {
  CatRef two = catalog::arrow();
  auto h = hom_module(two);
  auto cov = representable(pick(two, "1"), Variance::Covariant);
  auto con = representable(pick(two, "0"), Variance::Contravariant);
  auto idt = identity_functor(two);
  auto id1 = identity_functor(catalog::terminal());
  auto hp = hom_module(catalog::parallel_pair());
  auto idp = identity_functor(catalog::parallel_pair());
  struct Probe {
    std::vector<ModuleRef> source;
    ModuleRef target;
    FunctorMap vf, vg;
    CatRef base;
  };
  std::vector<Probe> probes = {
      {{}, h, idt, idt, two},
      {{h}, h, idt, idt, nullptr},
      {{con, cov}, h, idt, idt, nullptr},
      {{cov, con}, hom_module(catalog::terminal()), id1, id1, nullptr},
      {{h, h}, h, idt, idt, nullptr},
      {{hp}, hp, idp, idp, nullptr},
      {{hp, hp}, hp, idp, idp, nullptr},
  };
  int checked = 0;
  for (const auto& p : probes) {
    auto shape = make_shape(p.source, p.base);
    for (const Cell& c : enumerate_cells(shape, p.target, p.vf, p.vg)) {
      for (int slot = 0; slot <= shape->length(); ++slot) {
        Cell phi = factor_through_unit(c, slot);
        validate_cell(phi);
        CatRef ak = slot == 0 ? shape->base : p.source[slot - 1]->cod();
        std::vector<Cell> inners;
        for (int i = 0; i <= shape->length(); ++i) {
          if (i == slot) inners.push_back(nullary_unit_cell(ak));
          if (i < shape->length()) inners.push_back(identity_cell(p.source[i]));
        }
        int matches = 0;
        for (const Cell& psi : enumerate_cells(phi.shape, phi.target, phi.vf, phi.vg))
          if (substitute_cells(psi, inners) == c) {
            ++matches;
            EXPECT_EQ(psi, phi);
          }
        EXPECT_EQ(matches, 1);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(EquipmentTest, FunctorUnitOfIdentityIsIdentity) {
  for (const auto& named : catalog::small()) {
    auto idf = identity_functor(named.cat);
    EXPECT_EQ(functor_unit_cell(idf), identity_cell(hom_module(named.cat))) << named.name;
  }
}

TEST(EquipmentTest, FunctorUnitOfPickOne) {
  CatRef two = catalog::arrow();
  Cell f2 = functor_unit_cell(pick(two, "1"));
  validate_cell(f2);
  ASSERT_EQ(f2.values.size(), 1u);
  EXPECT_EQ(f2.values[0], hom_element(*f2.target, two->identity(obj(two, "1"))));
}

TEST(EquipmentTest, FunctorUnitAfterUnitIsWhiskeredUnit) {
  for (const auto& nf : catalog::small_functors()) {
    const FunctorMap& f = nf.functor;
    Cell lhs = substitute_cells(functor_unit_cell(f), {nullary_unit_cell(f.dom)});
    EXPECT_EQ(lhs, whisker_nullary(nullary_unit_cell(f.cod), f)) << nf.name;
  }
}

TEST(EquipmentTest, CompanionsOfIdentityAreHomShaped) {
  CatRef two = catalog::arrow();
  CompanionCells cc = companion_conjoint_cells(identity_functor(two));
  auto h = hom_module(two);
  for (const Cell* c : {&cc.kappa_cov, &cc.rho_cov, &cc.kappa_con, &cc.rho_con}) {
    EXPECT_TRUE(*c->source()[0] == *h);
    EXPECT_TRUE(*c->target == *h);
    EXPECT_EQ(c->values.size(), 3u);
  }
}

TEST(EquipmentTest, KappaOfPickZero) {
  CatRef two = catalog::arrow();
  FunctorMap f = pick(two, "0");
  CompanionCells cc = companion_conjoint_cells(f);
  ASSERT_EQ(cc.kappa_cov.values.size(), 1u);
  int e = cc.kappa_cov.values[0];
  EXPECT_EQ(cc.cov->element_name(e), "(*,0,id:0)");
  EXPECT_EQ(cc.cov->elem_b(e), obj(two, "0"));
  EXPECT_EQ(cc.cov->elem_a(e), 0);
}

TEST(EquipmentTest, CompanionIdentitiesHoldOnCatalog) {
  for (const auto& nf : catalog::small_functors()) {
    EXPECT_EQ(check_companion_identities(nf.functor), "") << nf.name;
    CompanionCells cc = companion_conjoint_cells(nf.functor);
    EXPECT_EQ(vertical(cc.rho_cov, cc.kappa_cov), functor_unit_cell(nf.functor)) << nf.name;
  }
}

TEST(EquipmentTest, RhoCovIsCartesian) {
  int checked = 0;
  for (const auto& f : functors_between(catalog::arrow(), catalog::composable_pair())) {
    CompanionCells cc = companion_conjoint_cells(f);
    auto r = restrict_module_data(hom_module(f.cod), f, identity_functor(f.cod));
    EXPECT_TRUE(find_module_iso(r.module, cc.cov).has_value());
    auto ha = hom_module(f.dom);
    for (const auto& g : functors_between(f.dom, f.cod))
      for (const Cell& c : cells_of({ha}, cc.rho_cov.target, f, g)) {
        int matches = 0;
        for (const Cell& phi : cells_of({ha}, cc.cov, identity_functor(f.dom), g))
          if (vertical(cc.rho_cov, phi) == c) ++matches;
        EXPECT_EQ(matches, 1);
        ++checked;
      }
  }
  EXPECT_GT(checked, 10);
}

TEST(EquipmentTest, TransposeIdentityOnHomGivesCompositionCell) {
  for (const auto& named : catalog::small()) {
    auto h = hom_module(named.cat);
    Cell id = identity_cell(h);
    EXPECT_EQ(transpose_cell(id, Side::Left, Direction::Add), action_cell(h, true, false)) << named.name;
    EXPECT_EQ(transpose_cell(id, Side::Right, Direction::Add), action_cell(h, false, true)) << named.name;
    EXPECT_EQ(transpose_cell(id, Side::Both, Direction::Add), action_cell(h, true, true)) << named.name;
  }
}

TEST(EquipmentTest, TransposeIsBijection) {
  int instances = 0;
  for (const auto& src : {catalog::terminal(), catalog::arrow()})
    for (const auto& dst : {catalog::arrow(), catalog::parallel_pair(), catalog::composable_pair()}) {
      auto fs = functors_between(src, dst);
      auto e = hom_module(src);
      auto target = hom_module(dst);
      for (const auto& f : fs)
        for (const auto& g : fs) {
          auto lhs = cells_of({e}, target, f, g);
          for (Side side : {Side::Left, Side::Right, Side::Both}) {
            FunctorMap vf = side == Side::Right ? f : identity_functor(dst);
            FunctorMap vg = side == Side::Left ? g : identity_functor(dst);
            std::vector<ModuleRef> source{e};
            if (side != Side::Right) source.insert(source.begin(), representable(f, Variance::Contravariant));
            if (side != Side::Left) source.push_back(representable(g, Variance::Covariant));
            auto rhs = cells_of(source, target, vf, vg);
            EXPECT_EQ(lhs.size(), rhs.size());
            for (const Cell& c : lhs) {
              Cell t = transpose_cell(c, side, Direction::Add);
              validate_cell(t);
              EXPECT_EQ(transpose_cell(t, side, Direction::Remove), c);
            }
            for (const Cell& c : rhs) {
              Cell t = transpose_cell(c, side, Direction::Remove);
              validate_cell(t);
              EXPECT_EQ(transpose_cell(t, side, Direction::Add), c);
            }
            ++instances;
          }
        }
    }
  EXPECT_GT(instances, 50);
}

TEST(EquipmentTest, TransposeOfNullaryCell) {
  CatRef two = catalog::arrow();
  auto h = hom_module(two);
  FunctorMap vf = pick(two, "1"), vg = pick(two, "0");
  auto cells = cells_of({}, h, vf, vg, catalog::terminal());
  ASSERT_EQ(cells.size(), 1u);
  for (Side side : {Side::Left, Side::Right}) {
    Cell t = transpose_cell(cells[0], side, Direction::Add);
    validate_cell(t);
    EXPECT_EQ(t.shape->length(), 1);
    EXPECT_EQ(transpose_cell(t, side, Direction::Remove), cells[0]);
  }
  Cell both = transpose_cell(cells[0], Side::Both, Direction::Add);
  EXPECT_EQ(both.shape->length(), 2);
  EXPECT_EQ(transpose_cell(both, Side::Both, Direction::Remove), cells[0]);
}

TEST(EquipmentTest, RemoveRejectsBadShapes) {
  CatRef two = catalog::arrow();
  Cell f2 = functor_unit_cell(pick(two, "1"));
  EXPECT_EQ(kind_of([&] { transpose_cell(f2, Side::Left, Direction::Remove); }), ErrorKind::ShapeMismatch);
  auto free_pair = module_coproduct({hom_module(two), hom_module(two)});
  Cell id = identity_cell(free_pair);
  EXPECT_EQ(kind_of([&] { transpose_cell(id, Side::Right, Direction::Remove); }), ErrorKind::ShapeMismatch);
  Cell iota = nullary_unit_cell(two);
  EXPECT_EQ(kind_of([&] { transpose_cell(iota, Side::Left, Direction::Remove); }), ErrorKind::ShapeMismatch);
}

TEST(EquipmentTest, IdentityNatGivesIdentityCell) {
  for (const auto& nf : catalog::small_functors()) {
    NatTrans id = identity_nat(nf.functor);
    EXPECT_EQ(nat_to_cell(id), identity_cell(representable(nf.functor, Variance::Covariant))) << nf.name;
    EXPECT_EQ(nat_to_conjoint_cell(id), identity_cell(representable(nf.functor, Variance::Contravariant)))
        << nf.name;
  }
}

TEST(EquipmentTest, NatBetweenPoints) {
  CatRef two = catalog::arrow();
  FunctorMap f = pick(two, "0"), g = pick(two, "1");
  auto nats = enumerate_nats(f, g);
  ASSERT_EQ(nats.size(), 1u);
  Cell c = nat_to_cell(nats[0]);
  validate_cell(c);
  auto bf = representable(f, Variance::Covariant);
  auto bg = representable(g, Variance::Covariant);
  ASSERT_EQ(bf->num_elements(), 1);
  EXPECT_EQ(bg->element_name(c.values[0]), "(*,0,a)");
  EXPECT_EQ(cell_to_nat(c, f, g).components, nats[0].components);
}

TEST(EquipmentTest, YonedaCountsAndRoundTrips) {
  int pairs = 0;
  for (const auto& nf : catalog::small_functors())
    for (const auto& ng : catalog::small_functors()) {
      const FunctorMap& f = nf.functor;
      const FunctorMap& g = ng.functor;
      if (f.dom != g.dom || f.cod != g.cod) continue;
      auto nats = enumerate_nats(f, g);
      auto idA = identity_functor(f.dom), idB = identity_functor(f.cod);
      auto cov_cells = cells_of({representable(f, Variance::Covariant)}, representable(g, Variance::Covariant),
                                idA, idB);
      auto con_cells = cells_of({representable(g, Variance::Contravariant)},
                                representable(f, Variance::Contravariant), idB, idA);
      EXPECT_EQ(nats.size(), cov_cells.size()) << nf.name << " " << ng.name;
      EXPECT_EQ(nats.size(), con_cells.size()) << nf.name << " " << ng.name;
      for (const auto& alpha : nats) {
        EXPECT_EQ(cell_to_nat(nat_to_cell(alpha), f, g).components, alpha.components);
        EXPECT_EQ(conjoint_cell_to_nat(nat_to_conjoint_cell(alpha), f, g).components, alpha.components);
      }
      for (const Cell& c : cov_cells) EXPECT_EQ(nat_to_cell(cell_to_nat(c, f, g)), c);
      for (const Cell& c : con_cells) EXPECT_EQ(nat_to_conjoint_cell(conjoint_cell_to_nat(c, f, g)), c);
      ++pairs;
    }
  EXPECT_GT(pairs, 20);
}

TEST(EquipmentTest, CellToNatRejectsWrongShape) {
  CatRef two = catalog::arrow();
  FunctorMap f = pick(two, "0");
  Cell c = identity_cell(hom_module(two));
  EXPECT_EQ(kind_of([&] { cell_to_nat(c, f, f); }), ErrorKind::ShapeMismatch);
  EXPECT_EQ(kind_of([&] { conjoint_cell_to_nat(c, f, f); }), ErrorKind::ShapeMismatch);
}

}  // namespace
}  // namespace virteq
