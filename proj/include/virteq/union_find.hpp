#pragma once

#include <numeric>
#include <vector>

namespace virteq {

// Disjoint sets over 0..n-1. The representative of every class is its least
// member, so results never depend on the order unions were performed in.
class UnionFind {
 public:
  explicit UnionFind(int n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int size() const { return static_cast<int>(parent_.size()); }

  int find(int x) {
    int root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      int next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // Returns true when the two elements were in different classes.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  bool same(int a, int b) { return find(a) == find(b); }

  int count_classes() {
    int n = 0;
    for (int i = 0; i < size(); ++i) n += (find(i) == i);
    return n;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace virteq
