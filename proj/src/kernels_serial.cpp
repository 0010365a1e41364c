#include <algorithm>

#include "csp_solver.hpp"
#include "virteq/kernels.hpp"
#include "virteq/union_find.hpp"

namespace virteq::kernels {

int Csp::add_var(std::vector<int> values) {
  vars.push_back(Var{std::move(values), {}});
  checks.emplace_back();
  return size() - 1;
}

int Csp::add_var(Domain dynamic) {
  vars.push_back(Var{{}, std::move(dynamic)});
  checks.emplace_back();
  return size() - 1;
}

void Csp::add_check(std::span<const int> scope, Check check) {
  if (scope.empty()) {
    preconditions.push_back(std::move(check));
    return;
  }
  add_check_at(*std::max_element(scope.begin(), scope.end()), std::move(check));
}

void Csp::add_check_at(int var, Check check) { checks[var].push_back(std::move(check)); }

namespace serial {

std::vector<std::vector<int>> solve(const Csp& csp, Budget& budget, std::size_t max_solutions) {
  detail::Solver solver(csp, budget, max_solutions);
  std::vector<int> assignment(csp.size(), -1);
  solver.run(assignment, 0);
  return std::move(solver.solutions());
}

std::vector<std::vector<int>> coend_classes(const std::vector<CoendEntry>& entries) {
  std::vector<std::vector<int>> out(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    UnionFind uf(entries[i].size);
    for (auto [a, b] : entries[i].edges) uf.unite(a, b);
    out[i].resize(entries[i].size);
    for (int x = 0; x < entries[i].size; ++x) out[i][x] = uf.find(x);
  }
  return out;
}

std::vector<std::vector<std::vector<int>>> end_families(const std::vector<Csp>& entries, Budget& budget) {
  std::vector<std::vector<std::vector<int>>> out;
  out.reserve(entries.size());
  for (const auto& csp : entries) out.push_back(solve(csp, budget));
  return out;
}

}  // namespace serial
}  // namespace virteq::kernels
