// Serial reference against the OpenMP kernels on a few desk-scale workloads.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "virteq/calculus.hpp"
#include "virteq/catalog.hpp"
#include "virteq/kernels.hpp"

using namespace virteq;

namespace {

CatRef chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < n; ++i) names.push_back("c" + std::string(i < 10 ? "0" : "") + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) covers.push_back({i, i + 1});
  return catalog::poset(names, covers);
}

double median_ms(const std::function<void()>& fn, int reps) {
  std::vector<double> t;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-34s %10.2f %10.2f %8.2fx  %s\n", name, serial, parallel, serial / parallel, same ? "equal" : "DIFFER");
}

// Proper colourings of a cycle with `n` vertices and `k` colours.
kernels::Csp colouring(int n, int k) {
  kernels::Csp csp;
  std::vector<int> colours(k);
  for (int i = 0; i < k; ++i) colours[i] = i;
  for (int v = 0; v < n; ++v) csp.add_var(colours);
  for (int v = 1; v < n; ++v) {
    int scope[2] = {v - 1, v};
    csp.add_check(scope, [v](const int* a) { return a[v - 1] != a[v]; });
  }
  int scope[2] = {0, n - 1};
  csp.add_check(scope, [n](const int* a) { return a[0] != a[n - 1]; });
  return csp;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 5;
  std::printf("threads: %d, repetitions: %d (median ms)\n", omp_get_max_threads(), reps);
  std::printf("%-34s %10s %10s %9s\n", "workload", "serial", "omp", "speedup");

  {
    ModuleRef h = hom_module(chain(40));
    Composite a, b;
    double s = median_ms([&] { a = tensor_many({h, h, h}, nullptr, Exec::Serial); }, reps);
    double p = median_ms([&] { b = tensor_many({h, h, h}, nullptr, Exec::Parallel); }, reps);
    row("tensor hom(chain40)^3", s, p, *a.module == *b.module && a.cell == b.cell);
  }
  {
    ModuleRef h = hom_module(chain(9));
    ModuleRef k = module_coproduct({h, h});
    h = module_coproduct({h, h, h});
    RightExtension a, b;
    double s = median_ms([&] { a = right_extension_module(k, h, Exec::Serial); }, reps);
    double p = median_ms([&] { b = right_extension_module(k, h, Exec::Parallel); }, reps);
    row("right extension, 2hom / 3hom chain9", s, p, *a.module == *b.module);
  }
  {
    kernels::Csp csp = colouring(13, 4);
    std::vector<std::vector<int>> a, b;
    double s = median_ms([&] {
      Budget budget("bench", 1u << 30);
      a = kernels::serial::solve(csp, budget);
    }, reps);
    double p = median_ms([&] {
      Budget budget("bench", 1u << 30);
      b = kernels::omp::solve(csp, budget);
    }, reps);
    row("csp: 4-colourings of a 13-cycle", s, p, a == b);
  }
  {
    std::vector<kernels::CoendEntry> entries(256);
    for (int i = 0; i < 256; ++i) {
      entries[i].size = 4000;
      for (int j = 0; j + 7 < 4000; j += 3) entries[i].edges.push_back({j, (j * 7 + i) % 4000});
    }
    std::vector<std::vector<int>> a, b;
    double s = median_ms([&] { a = kernels::serial::coend_classes(entries); }, reps);
    double p = median_ms([&] { b = kernels::omp::coend_classes(entries); }, reps);
    row("coend classes, 256 x 4000 tuples", s, p, a == b);
  }
  return 0;
}
