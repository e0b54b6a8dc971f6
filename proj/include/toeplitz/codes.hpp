#pragma once

// Sliding block codes and positionwise block permutations acting on towers.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "toeplitz/core.hpp"
#include "toeplitz/error.hpp"
#include "toeplitz/skeleton.hpp"

namespace toeplitz {

  //! A local rule of radius m: the image of position k is table(x[k-m..k+m]).
  //! Windows are indexed in base |alphabet|, leftmost symbol most significant.
  class BlockCode {
   public:
    BlockCode(Alphabet alphabet, std::int64_t radius, std::vector<Cell> table)
        : _alphabet(std::move(alphabet)),
          _radius(radius),
          _table(std::move(table)) {
      if (_radius < 0) {
        throw Error("block code radius must be non-negative");
      }
      if (_table.size() != window_count()) {
        throw Error("block code table has " + std::to_string(_table.size())
                    + " entries, expected " + std::to_string(window_count()));
      }
      for (Cell c : _table) {
        if (c < 0 || static_cast<std::size_t>(c) >= _alphabet.size()) {
          throw AlphabetError("block code image outside the alphabet");
        }
      }
    }

    static BlockCode from_function(
        Alphabet                                       alphabet,
        std::int64_t                                   radius,
        std::function<Cell(std::span<Cell const>)> const& f) {
      auto const        k = static_cast<std::int64_t>(alphabet.size());
      auto const        w = 2 * radius + 1;
      std::size_t       total = 1;
      for (std::int64_t i = 0; i < w; ++i) {
        total *= static_cast<std::size_t>(k);
      }
      std::vector<Cell> table(total);
      std::vector<Cell> window(static_cast<std::size_t>(w));
      for (std::size_t idx = 0; idx < total; ++idx) {
        auto rest = idx;
        for (auto i = w - 1; i >= 0; --i) {
          window[i] = static_cast<Cell>(rest % k);
          rest /= k;
        }
        table[idx] = f(window);
      }
      return BlockCode(std::move(alphabet), radius, std::move(table));
    }

    static BlockCode identity(Alphabet alphabet) {
      return from_function(std::move(alphabet), 0,
                           [](std::span<Cell const> w) { return w[0]; });
    }

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    std::int64_t radius() const noexcept {
      return _radius;
    }

    std::size_t window_count() const noexcept {
      std::size_t total = 1;
      for (std::int64_t i = 0; i < 2 * _radius + 1; ++i) {
        total *= _alphabet.size();
      }
      return total;
    }

    std::vector<Cell> const& table() const noexcept {
      return _table;
    }

    std::size_t window_index(std::span<Cell const> window) const {
      std::size_t idx = 0;
      for (Cell c : window) {
        idx = idx * _alphabet.size() + static_cast<std::size_t>(c);
      }
      return idx;
    }

    Cell operator()(std::span<Cell const> window) const {
      return _table[window_index(window)];
    }

    friend bool operator==(BlockCode const&, BlockCode const&) = default;

   private:
    Alphabet          _alphabet;
    std::int64_t      _radius;
    std::vector<Cell> _table;
  };

  namespace detail {

    // Levels not marked `keep` are replaced, deepest first, by the certified
    // skeleton of the next deeper level at their period.
    inline SkeletonTower with_recomputed_levels(TowerData                d,
                                                std::vector<bool> const& keep) {
      for (std::size_t i = d.levels.size() - 1; i-- > 0;) {
        if (!keep[i]) {
          d.levels[i].word = skeleton_from_status(
                                 scan_residues(d.levels[i + 1].word,
                                               d.levels[i].period))
                                 .word;
        }
      }
      return validate_tower(std::move(d));
    }

  }  // namespace detail

  //! Output cell k is c(window) when every cell of the window is filled in
  //! the deepest word, Blank otherwise.
  inline SkeletonTower apply_block_code(SkeletonTower const& t,
                                        BlockCode const&     c) {
    if (!(t.alphabet() == c.alphabet())) {
      throw AlphabetMismatchError("block code and tower alphabets differ");
    }
    auto const&       w = t.deepest_word();
    auto const        n = w.length();
    auto const        m = c.radius();
    std::vector<Cell> out(static_cast<std::size_t>(n), kBlank);
    std::vector<Cell> window(static_cast<std::size_t>(2 * m + 1));
    for (std::int64_t k = 0; k < n; ++k) {
      bool full = true;
      for (std::int64_t d = -m; d <= m && full; ++d) {
        window[d + m] = w.at(k + d);
        full          = window[d + m] != kBlank;
      }
      if (full) {
        out[k] = c(window);
      }
    }
    auto d          = t.data();
    d.levels.back().word = PartialCyclicWord(std::move(out));
    return detail::with_recomputed_levels(
        std::move(d), std::vector<bool>(t.levels().size(), false));
  }

  //! p permutations of the alphabet; the symbol at absolute position x is
  //! sent through perms[x mod p].
  class PositionwisePermutation {
   public:
    PositionwisePermutation(Alphabet                       alphabet,
                            std::vector<std::vector<Cell>> perms)
        : _alphabet(std::move(alphabet)), _perms(std::move(perms)) {
      if (_perms.empty()) {
        throw Error("a positionwise permutation needs a positive period");
      }
      for (auto const& p : _perms) {
        if (p.size() != _alphabet.size()) {
          throw Error("permutation size differs from the alphabet size");
        }
        std::vector<bool> seen(p.size(), false);
        for (Cell c : p) {
          if (c < 0 || static_cast<std::size_t>(c) >= p.size() || seen[c]) {
            throw Error("entry is not a bijection of the alphabet");
          }
          seen[c] = true;
        }
      }
    }

    static PositionwisePermutation identity(Alphabet alphabet,
                                            std::int64_t period) {
      std::vector<Cell> id(alphabet.size());
      for (std::size_t i = 0; i < id.size(); ++i) {
        id[i] = static_cast<Cell>(i);
      }
      return {std::move(alphabet),
              std::vector<std::vector<Cell>>(static_cast<std::size_t>(period),
                                             id)};
    }

    Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    std::int64_t period() const noexcept {
      return static_cast<std::int64_t>(_perms.size());
    }

    std::vector<std::vector<Cell>> const& perms() const noexcept {
      return _perms;
    }

    Cell apply(std::int64_t position, Cell c) const {
      return c == kBlank ? kBlank
                         : _perms[static_cast<std::size_t>(
                               mod(position, period()))][c];
    }

    PositionwisePermutation inverse() const {
      auto inv = _perms;
      for (std::size_t i = 0; i < _perms.size(); ++i) {
        for (std::size_t a = 0; a < _perms[i].size(); ++a) {
          inv[i][_perms[i][a]] = static_cast<Cell>(a);
        }
      }
      return {_alphabet, std::move(inv)};
    }

    friend bool operator==(PositionwisePermutation const&,
                           PositionwisePermutation const&) = default;

   private:
    Alphabet                       _alphabet;
    std::vector<std::vector<Cell>> _perms;
  };

  inline SkeletonTower apply_positionwise_permutation(
      SkeletonTower const&           t,
      PositionwisePermutation const& phi) {
    if (!(t.alphabet() == phi.alphabet())) {
      throw AlphabetMismatchError("permutation and tower alphabets differ");
    }
    auto const p = phi.period();
    if (t.deepest_period() % p != 0) {
      throw PeriodMismatchError("block period " + std::to_string(p)
                                + " does not divide the deepest period "
                                + std::to_string(t.deepest_period()));
    }
    auto              d = t.data();
    std::vector<bool> keep(d.levels.size(), true);
    for (std::size_t i = 0; i < d.levels.size(); ++i) {
      auto& l = d.levels[i];
      if (l.period >= p && l.period % p != 0) {
        throw PeriodMismatchError("block period " + std::to_string(p)
                                  + " does not divide declared period "
                                  + std::to_string(l.period));
      }
      if (l.period % p != 0) {
        // periods below p: the permuted cell has no single value per residue
        keep[i] = false;
        continue;
      }
      std::vector<Cell> cells(l.word.cells().begin(), l.word.cells().end());
      for (std::int64_t x = 0; x < l.period; ++x) {
        cells[x] = phi.apply(x, cells[x]);
      }
      l.word = PartialCyclicWord(std::move(cells));
    }
    return detail::with_recomputed_levels(std::move(d), keep);
  }

}  // namespace toeplitz
