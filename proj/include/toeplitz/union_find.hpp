#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace toeplitz {

  //! Disjoint sets over 0..n-1 with path halving and union by size.
  class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : _parent(n), _size(n, 1) {
      std::iota(_parent.begin(), _parent.end(), std::size_t{0});
    }

    std::size_t find(std::size_t i) {
      while (_parent[i] != i) {
        i = _parent[i] = _parent[_parent[i]];
      }
      return i;
    }

    //! Returns true if a union was performed.
    bool unite(std::size_t i, std::size_t j) {
      auto a = find(i);
      auto b = find(j);
      if (a == b) {
        return false;
      }
      if (_size[a] < _size[b]) {
        std::swap(a, b);
      }
      _parent[b] = a;
      _size[a] += _size[b];
      return true;
    }

    //! Classes listed by smallest member, members ascending.
    std::vector<std::vector<std::size_t>> classes() {
      std::vector<std::vector<std::size_t>> out;
      std::vector<std::size_t>              slot(_parent.size(), SIZE_MAX);
      for (std::size_t i = 0; i < _parent.size(); ++i) {
        auto r = find(i);
        if (slot[r] == SIZE_MAX) {
          slot[r] = out.size();
          out.emplace_back();
        }
        out[slot[r]].push_back(i);
      }
      return out;
    }

   private:
    std::vector<std::size_t> _parent;
    std::vector<std::size_t> _size;
  };

}  // namespace toeplitz
