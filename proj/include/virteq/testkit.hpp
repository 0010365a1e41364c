#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "virteq/calculus.hpp"
#include "virteq/fincat.hpp"
#include "virteq/module.hpp"

namespace virteq::testkit {

enum class GenStyle { Poset, QuotientFree };

constexpr int kMaxGeneratedMorphisms = 12;

// Seeded source of random instances. Draws depend only on the seed and the
// sequence of calls.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform in [0, n); n > 0.
  int below(int n);
  bool chance(int percent) { return below(100) < percent; }

  // 1..max_objects objects (max_objects <= 5), at most 12 morphisms.
  CatRef category(int max_objects, GenStyle style);
  CatRef category(int max_objects) { return category(max_objects, chance(30) ? GenStyle::QuotientFree : GenStyle::Poset); }
  std::optional<FunctorMap> functor(const CatRef& a, const CatRef& b);
  // A module a ⇸ b: a coproduct of up to two comma modules along random
  // functors, each cut down to a random generated submodule.
  ModuleRef module(const CatRef& a, const CatRef& b);

 private:
  std::uint64_t state_;
};

CatRef gen_category(std::uint64_t seed, int max_objects, GenStyle style);

struct GenCospan {
  FunctorMap f;
  FunctorMap g;
};
GenCospan gen_cospan(Generator& gen, int max_objects);

// A non-empty category from the small catalog.
CatRef random_small(Generator& gen);
// Homs, representables along random functors and one random module, all
// b ⇸ c or endo-modules of b and c.
std::vector<ModuleRef> probes_between(Generator& gen, const CatRef& b, const CatRef& c);

// Direct coend by breadth-first search over the middle relation: the number
// of classes of each entry, as a map (b, a) -> count for the binary tensor of
// e: A ⇸ B and f: B ⇸ C, plus the class of each source tuple index.
struct NaiveCoend {
  std::vector<int> class_of;  // per tuple of make_shape({e, f})
  std::map<std::pair<int, int>, int> classes;
};
NaiveCoend naive_coend(const ModuleRef& e, const ModuleRef& f);

struct SuiteReport {
  std::string name;
  bool pass = true;
  int instances = 0;
  std::string counterexample;  // first failure in generation order
  int skipped = 0;             // random draws over the enumeration budget
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  int size = 100;     // random instances per suite
  int max_objects = 3;
  // Applied to every fast tensor before it is compared with the oracle.
  std::function<void(Composite&)> corrupt_tensor;
};

SuiteReport suite_tensor(const SuiteOptions& opt);        // (a)
SuiteReport suite_right_extension(const SuiteOptions& opt);  // (b)
SuiteReport suite_adjunction(const SuiteOptions& opt);    // (c)
SuiteReport suite_finality(const SuiteOptions& opt);      // (d)
SuiteReport suite_composite(const SuiteOptions& opt);     // (e)
std::vector<SuiteReport> run_suites(const SuiteOptions& opt);

// Shared checks, also used by the acceptance runner. Each returns an empty
// string on success and a description of the first failure otherwise.
std::string check_tensor_against_oracle(const ModuleRef& e, const ModuleRef& f, const Composite& fast);
std::string check_right_extension(const ModuleRef& k, const ModuleRef& f, const std::vector<ModuleRef>& probes);
std::string check_composite_oracle(const Cell& c, const std::vector<ModuleRef>& probe_targets);

}  // namespace virteq::testkit
