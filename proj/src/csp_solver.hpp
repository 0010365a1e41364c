#pragma once

#include <vector>

#include "virteq/kernels.hpp"

namespace virteq::kernels::detail {

// Backtracking search over `csp` starting at variable `first`, with
// variables below `first` already fixed in `assignment`.
class Solver {
 public:
  Solver(const Csp& csp, Budget& budget, std::size_t max_solutions)
      : csp_(csp), budget_(budget), max_(max_solutions) {}

  void run(std::vector<int>& assignment, int first) {
    if (first == 0) {
      for (const auto& c : csp_.preconditions)
        if (!c(assignment.data())) return;
    }
    descend(assignment, first);
  }

  std::vector<std::vector<int>>& solutions() { return out_; }

 private:
  bool full() const { return max_ != 0 && out_.size() >= max_; }

  bool accept(const std::vector<int>& a, int v) const {
    for (const auto& c : csp_.checks[v])
      if (!c(a.data())) return false;
    return true;
  }

  void descend(std::vector<int>& a, int v) {
    if (v == csp_.size()) {
      out_.push_back(a);
      return;
    }
    const auto& var = csp_.vars[v];
    std::span<const int> dom = var.dynamic ? var.dynamic(a.data()) : std::span<const int>(var.values);
    for (int value : dom) {
      budget_.tick();
      a[v] = value;
      if (accept(a, v)) descend(a, v + 1);
      if (full()) return;
    }
  }

  const Csp& csp_;
  Budget& budget_;
  std::size_t max_;
  std::vector<std::vector<int>> out_;
};

}  // namespace virteq::kernels::detail
