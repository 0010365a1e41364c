#include <exception>
#include <limits>

#include "csp_solver.hpp"
#include "virteq/kernels.hpp"
#include "virteq/union_find.hpp"

namespace virteq::kernels::omp {

namespace {

// Keeps the exception of the lowest failing index so that errors do not
// depend on scheduling.
class FirstError {
 public:
  void record(long index) {
#pragma omp critical(virteq_first_error)
    {
      if (index < index_) {
        index_ = index;
        error_ = std::current_exception();
      }
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  long index_ = std::numeric_limits<long>::max();
  std::exception_ptr error_;
};

}  // namespace

std::vector<std::vector<int>> solve(const Csp& csp, Budget& budget) {
  if (csp.size() == 0 || csp.vars[0].dynamic) return serial::solve(csp, budget);
  std::vector<int> start(csp.size(), -1);
  for (const auto& c : csp.preconditions)
    if (!c(start.data())) return {};

  const auto& first = csp.vars[0].values;
  const long n = static_cast<long>(first.size());
  std::vector<std::vector<std::vector<int>>> parts(first.size());
  FirstError err;
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      budget.tick();
      std::vector<int> a(csp.size(), -1);
      a[0] = first[i];
      bool ok = true;
      for (const auto& c : csp.checks[0])
        if (!c(a.data())) { ok = false; break; }
      if (ok) {
        detail::Solver solver(csp, budget, 0);
        solver.run(a, 1);
        parts[i] = std::move(solver.solutions());
      }
    } catch (...) {
      err.record(i);
    }
  }
  err.rethrow();

  std::vector<std::vector<int>> out;
  for (auto& p : parts)
    for (auto& s : p) out.push_back(std::move(s));
  return out;
}

std::vector<std::vector<int>> coend_classes(const std::vector<CoendEntry>& entries) {
  std::vector<std::vector<int>> out(entries.size());
  const long n = static_cast<long>(entries.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    UnionFind uf(entries[i].size);
    for (auto [a, b] : entries[i].edges) uf.unite(a, b);
    out[i].resize(entries[i].size);
    for (int x = 0; x < entries[i].size; ++x) out[i][x] = uf.find(x);
  }
  return out;
}

std::vector<std::vector<std::vector<int>>> end_families(const std::vector<Csp>& entries, Budget& budget) {
  std::vector<std::vector<std::vector<int>>> out(entries.size());
  const long n = static_cast<long>(entries.size());
  FirstError err;
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = serial::solve(entries[i], budget);
    } catch (...) {
      err.record(i);
    }
  }
  err.rethrow();
  return out;
}

}  // namespace virteq::kernels::omp
