#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "virteq/error.hpp"

namespace virteq::kernels {

// A finite constraint problem solved by ordered backtracking. Variables are
// assigned in index order; each variable draws values from its static domain
// or, if `dynamic` is set, from a domain computed from the earlier values.
// A check registered at variable v runs as soon as v has been assigned and
// may read any variable <= v. Solutions come out in lexicographic order of
// value positions, which is lexicographic by value when domains are sorted.
struct Csp {
  using Check = std::function<bool(const int* assignment)>;
  using Domain = std::function<std::span<const int>(const int* assignment)>;

  struct Var {
    std::vector<int> values;
    Domain dynamic;
  };

  std::vector<Var> vars;
  std::vector<std::vector<Check>> checks;

  int add_var(std::vector<int> values);
  int add_var(Domain dynamic);
  int size() const { return static_cast<int>(vars.size()); }
  // Registers `check` at the largest variable in `scope`; with an empty scope
  // the check runs once before any variable is assigned.
  void add_check(std::span<const int> scope, Check check);
  void add_check_at(int var, Check check);

  std::vector<Check> preconditions;
};

// Per-entry coend quotient: `size` candidate tuples and generating pairs.
// The result maps each tuple to the least member of its class.
struct CoendEntry {
  int size = 0;
  std::vector<std::pair<int, int>> edges;
};

namespace serial {

// max_solutions == 0 means all.
std::vector<std::vector<int>> solve(const Csp& csp, Budget& budget, std::size_t max_solutions = 0);
std::vector<std::vector<int>> coend_classes(const std::vector<CoendEntry>& entries);
std::vector<std::vector<std::vector<int>>> end_families(const std::vector<Csp>& entries, Budget& budget);

}  // namespace serial

namespace omp {

// Splits on the values of variable 0 and concatenates in order.
std::vector<std::vector<int>> solve(const Csp& csp, Budget& budget);
std::vector<std::vector<int>> coend_classes(const std::vector<CoendEntry>& entries);
std::vector<std::vector<std::vector<int>>> end_families(const std::vector<Csp>& entries, Budget& budget);

}  // namespace omp

}  // namespace virteq::kernels
