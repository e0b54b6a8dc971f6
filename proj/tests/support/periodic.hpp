#pragma once

// Fully-filled periodic words as towers, for comparisons with the oracle.

#include <cstdint>
#include <string>
#include <vector>

#include "toeplitz/core.hpp"
#include "toeplitz/skeleton.hpp"

namespace toeplitz::fixtures {

  //! Every word of length n over {0..k-1}, in lexicographic order.
  inline std::vector<std::vector<Cell>> all_words(Cell k, std::int64_t n) {
    std::vector<std::vector<Cell>> out;
    std::vector<Cell>              w(static_cast<std::size_t>(n), 0);
    while (true) {
      out.push_back(w);
      auto i = n - 1;
      for (; i >= 0; --i) {
        if (++w[i] < k) {
          break;
        }
        w[i] = 0;
      }
      if (i < 0) {
        return out;
      }
    }
  }

  //! Levels at a divisor chain of n ending in n, each the skeleton of the
  //! word at its period.
  inline SkeletonTower periodic_tower(Alphabet const&          a,
                                      std::vector<Cell> const& cells) {
    auto const n    = static_cast<std::int64_t>(cells.size());
    auto const full = validate_tower(
        TowerData{a, {{n, PartialCyclicWord(cells)}}, std::nullopt});
    TowerData d{a, {}, std::nullopt};
    for (auto p : divisors(n)) {
      if (p == 1 || p == n
          || (!d.levels.empty() && p % d.levels.back().period != 0)) {
        continue;
      }
      d.levels.push_back({p, skeleton_word(full, p).word});
    }
    d.levels.push_back({n, PartialCyclicWord(cells)});
    return validate_tower(std::move(d));
  }

  //! Least period of a cyclic word.
  inline std::int64_t least_period(std::vector<Cell> const& w) {
    auto const n = static_cast<std::int64_t>(w.size());
    for (auto d : divisors(n)) {
      bool ok = true;
      for (std::int64_t i = 0; i + d < n && ok; ++i) {
        ok = w[i] == w[i + d];
      }
      if (ok) {
        return d;
      }
    }
    return n;
  }

}  // namespace toeplitz::fixtures
