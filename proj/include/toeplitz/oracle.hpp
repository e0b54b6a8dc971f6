#pragma once

// Brute-force ground truth on fully-filled, exactly periodic words.  Nothing
// here uses the skeleton or conjugacy modules.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toeplitz/core.hpp"
#include "toeplitz/error.hpp"

namespace toeplitz {

  //! A fully-filled word of length N read as an N-periodic sequence over
  //! symbols 0..symbols-1.
  class PeriodicWord {
   public:
    PeriodicWord(std::vector<Cell> cells, std::size_t symbols)
        : _cells(std::move(cells)), _symbols(symbols) {
      if (_cells.empty()) {
        throw Error("a periodic word must be non-empty");
      }
      for (Cell c : _cells) {
        if (c == kBlank) {
          throw Error("a periodic word has no Blank cells");
        }
        if (c < 0 || static_cast<std::size_t>(c) >= _symbols) {
          throw AlphabetError("symbol outside the alphabet");
        }
      }
    }

    static PeriodicWord parse(Alphabet const& alphabet, std::string_view text) {
      auto w = parse_word(alphabet, text);
      return {{w.cells().begin(), w.cells().end()}, alphabet.size()};
    }

    std::int64_t length() const noexcept {
      return static_cast<std::int64_t>(_cells.size());
    }

    std::size_t symbols() const noexcept {
      return _symbols;
    }

    Cell at(std::int64_t i) const noexcept {
      return _cells[static_cast<std::size_t>(mod(i, length()))];
    }

    std::vector<Cell> const& cells() const noexcept {
      return _cells;
    }

    friend bool operator==(PeriodicWord const&, PeriodicWord const&) = default;

   private:
    std::vector<Cell> _cells;
    std::size_t       _symbols;
  };

  struct ExactAnalysis {
    std::vector<bool> in;        // in[r]: r is in Per_p
    std::vector<Cell> skeleton;  // symbol on Per_p, Blank elsewhere
    bool              essential = false;
  };

  namespace detail {

    // x in Per_q iff w(x) = w(x + jq) for all j; checked over one full cycle
    // of length lcm(q, N).
    inline bool exact_in(PeriodicWord const& w, std::int64_t q, std::int64_t x) {
      auto const cycle = std::lcm(q, w.length());
      for (std::int64_t y = x; y < x + cycle; y += q) {
        if (w.at(y) != w.at(x)) {
          return false;
        }
      }
      return true;
    }

  }  // namespace detail

  inline ExactAnalysis exact_periodic_analysis(PeriodicWord const& w,
                                               std::int64_t        p) {
    if (p <= 0 || w.length() % p != 0) {
      throw NonDivisorError(std::to_string(p) + " does not divide "
                            + std::to_string(w.length()));
    }
    ExactAnalysis out;
    out.in.resize(static_cast<std::size_t>(p));
    out.skeleton.assign(static_cast<std::size_t>(p), kBlank);
    bool any = false;
    for (std::int64_t r = 0; r < p; ++r) {
      out.in[r] = detail::exact_in(w, p, r);
      if (out.in[r]) {
        out.skeleton[r] = w.at(r);
        any             = true;
      }
    }
    // p is a period (Per_p non-empty) and Per_q != Per_p for every q < p
    out.essential = any;
    for (std::int64_t q = 1; q < p && out.essential; ++q) {
      auto const l    = std::lcm(std::lcm(q, p), w.length());
      bool       same = true;
      for (std::int64_t x = 0; x < l && same; ++x) {
        same = detail::exact_in(w, p, x) == detail::exact_in(w, q, x);
      }
      out.essential = !same;
    }
    return out;
  }

  //! Tables are keyed by the occurring (2r+1)-windows; any other window maps
  //! to symbol 0.
  struct ConjugacyWitness {
    std::int64_t                   radius;
    std::map<std::vector<Cell>, Cell> forward;
    std::int64_t                   inverse_radius;
    std::map<std::vector<Cell>, Cell> inverse;
    //! forward(v) = sigma^shift(w)
    std::int64_t shift;
  };

  namespace detail {

    inline std::vector<Cell> window_of(PeriodicWord const& w, std::int64_t x,
                                       std::int64_t r) {
      std::vector<Cell> out;
      for (auto d = -r; d <= r; ++d) {
        out.push_back(w.at(x + d));
      }
      return out;
    }

    // Least s in [0, |w|) with u(x) = w(x + s) for all x, if any.
    inline std::optional<std::int64_t> rotation_to(std::vector<Cell> const& u,
                                                   PeriodicWord const& w) {
      PeriodicWord const uw(u, w.symbols());
      auto const         l = std::lcm(uw.length(), w.length());
      for (std::int64_t s = 0; s < w.length(); ++s) {
        bool ok = true;
        for (std::int64_t x = 0; x < l && ok; ++x) {
          ok = uw.at(x) == w.at(x + s);
        }
        if (ok) {
          return s;
        }
      }
      return std::nullopt;
    }

    // A code of radius r with C(w)(y) = v(y - s), if the windows of w
    // determine it.
    inline std::optional<std::map<std::vector<Cell>, Cell>> inverse_table(
        PeriodicWord const& v,
        PeriodicWord const& w,
        std::int64_t        s,
        std::int64_t        r) {
      std::map<std::vector<Cell>, Cell> table;
      auto const l = std::lcm(v.length(), w.length());
      for (std::int64_t y = 0; y < l; ++y) {
        auto [it, fresh] = table.emplace(window_of(w, y, r), v.at(y - s));
        if (!fresh && it->second != v.at(y - s)) {
          return std::nullopt;
        }
      }
      return table;
    }

  }  // namespace detail

  //! Exhaustive search, radius by radius, for a code of radius <= max_radius
  //! sending the orbit of v onto the orbit of w with an inverse code of
  //! radius <= max_radius.  Tables are tried in lexicographic order.
  inline std::optional<ConjugacyWitness> exact_conjugacy_search(
      PeriodicWord const& v,
      PeriodicWord const& w,
      std::int64_t        max_radius) {
    if (v.symbols() != w.symbols()) {
      throw AlphabetMismatchError("words over different alphabets");
    }
    auto const k = static_cast<Cell>(v.symbols());
    for (std::int64_t r = 0; r <= max_radius; ++r) {
      std::map<std::vector<Cell>, Cell> table;
      for (std::int64_t x = 0; x < v.length(); ++x) {
        table.emplace(detail::window_of(v, x, r), 0);
      }
      while (true) {
        std::vector<Cell> image;
        for (std::int64_t x = 0; x < v.length(); ++x) {
          image.push_back(table.at(detail::window_of(v, x, r)));
        }
        if (auto s = detail::rotation_to(image, w)) {
          for (std::int64_t ri = 0; ri <= max_radius; ++ri) {
            if (auto inv = detail::inverse_table(v, w, *s, ri)) {
              return ConjugacyWitness{r, table, ri, std::move(*inv), *s};
            }
          }
        }
        // next table: odometer increment, last window least significant
        auto it = table.rbegin();
        for (; it != table.rend(); ++it) {
          if (++it->second < k) {
            break;
          }
          it->second = 0;
        }
        if (it == table.rend()) {
          break;
        }
      }
    }
    return std::nullopt;
  }

}  // namespace toeplitz
