#pragma once

// Towers of partial periodic words: the finite presentation of a Toeplitz
// sequence.  A level (period P, word w) records which positions are filled
// with period P; Blank cells at a level are P-holes that later (longer)
// periods may fill.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toeplitz/error.hpp"
#include "toeplitz/supernatural.hpp"

namespace toeplitz {

  //! A symbol is an index into an Alphabet; kBlank renders as `_`.
  using Cell = std::int32_t;
  inline constexpr Cell kBlank = -1;

  //! Non-negative remainder.
  constexpr std::int64_t mod(std::int64_t a, std::int64_t m) noexcept {
    auto r = a % m;
    return r < 0 ? r + m : r;
  }

  class Alphabet {
   public:
    explicit Alphabet(std::vector<std::string> symbols)
        : _symbols(std::move(symbols)) {
      if (_symbols.size() < 2) {
        throw AlphabetError("an alphabet needs at least two symbols");
      }
      for (std::size_t i = 0; i < _symbols.size(); ++i) {
        auto const& s = _symbols[i];
        if (s.empty() || s == "_") {
          throw AlphabetError("invalid symbol '" + s + "'");
        }
        if (s.find_first_of(" \t\r\n#") != std::string::npos) {
          throw AlphabetError("symbol '" + s + "' contains whitespace or '#'");
        }
        if (std::find(_symbols.begin(), _symbols.begin() + i, s)
            != _symbols.begin() + i) {
          throw AlphabetError("duplicate symbol '" + s + "'");
        }
      }
    }

    std::size_t size() const noexcept {
      return _symbols.size();
    }

    std::vector<std::string> const& symbols() const noexcept {
      return _symbols;
    }

    std::string const& symbol(Cell c) const {
      if (c < 0 || static_cast<std::size_t>(c) >= _symbols.size()) {
        throw AlphabetError("cell " + std::to_string(c) + " is not a symbol");
      }
      return _symbols[c];
    }

    std::optional<Cell> find(std::string_view token) const {
      auto it = std::find(_symbols.begin(), _symbols.end(), token);
      if (it == _symbols.end()) {
        return std::nullopt;
      }
      return static_cast<Cell>(it - _symbols.begin());
    }

    Cell index_of(std::string_view token) const {
      auto c = find(token);
      if (!c) {
        throw AlphabetError("'" + std::string(token)
                            + "' is not in the alphabet");
      }
      return *c;
    }

    //! Every symbol is one character long, so words can be written compactly.
    bool single_char() const noexcept {
      return std::all_of(_symbols.begin(), _symbols.end(),
                         [](auto const& s) { return s.size() == 1; });
    }

    friend bool operator==(Alphabet const&, Alphabet const&) = default;

   private:
    std::vector<std::string> _symbols;
  };

  class PartialCyclicWord {
   public:
    explicit PartialCyclicWord(std::vector<Cell> cells)
        : _cells(std::move(cells)) {
      if (_cells.empty()) {
        throw Error("a cyclic word has positive length");
      }
    }

    static PartialCyclicWord blank(std::int64_t length) {
      return PartialCyclicWord(
          std::vector<Cell>(static_cast<std::size_t>(length), kBlank));
    }

    std::int64_t length() const noexcept {
      return static_cast<std::int64_t>(_cells.size());
    }

    Cell at(std::int64_t i) const noexcept {
      return _cells[static_cast<std::size_t>(mod(i, length()))];
    }

    bool filled(std::int64_t i) const noexcept {
      return at(i) != kBlank;
    }

    std::span<Cell const> cells() const noexcept {
      return _cells;
    }

    std::int64_t blank_count() const noexcept {
      return std::count(_cells.begin(), _cells.end(), kBlank);
    }

    //! w'(x) = w(x + k)
    PartialCyclicWord rotated(std::int64_t k) const {
      std::vector<Cell> out(_cells.size());
      for (std::int64_t x = 0; x < length(); ++x) {
        out[x] = at(x + k);
      }
      return PartialCyclicWord(std::move(out));
    }

    //! The same periodic pattern written over `times` periods.
    PartialCyclicWord repeated(std::int64_t times) const {
      std::vector<Cell> out;
      out.reserve(_cells.size() * times);
      for (std::int64_t t = 0; t < times; ++t) {
        out.insert(out.end(), _cells.begin(), _cells.end());
      }
      return PartialCyclicWord(std::move(out));
    }

    friend bool operator==(PartialCyclicWord const&,
                           PartialCyclicWord const&) = default;

   private:
    std::vector<Cell> _cells;
  };

  //! Compact form for single-character alphabets ("0_1_0"); general
  //! alphabets use space-separated tokens ("a _ bb _ a").
  inline std::string render(Alphabet const& alphabet,
                            std::span<Cell const> cells) {
    bool        compact = alphabet.single_char();
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!compact && i != 0) {
        out += ' ';
      }
      out += cells[i] == kBlank ? std::string("_") : alphabet.symbol(cells[i]);
    }
    return out;
  }

  inline std::string render(Alphabet const& alphabet,
                            PartialCyclicWord const& word) {
    return render(alphabet, word.cells());
  }

  //! Inverse of render().  Space-separated input is split into tokens;
  //! otherwise every character is a token.
  inline PartialCyclicWord parse_word(Alphabet const& alphabet,
                                      std::string_view text) {
    std::vector<std::string> tokens;
    if (text.find(' ') != std::string_view::npos) {
      std::size_t pos = 0;
      while (pos < text.size()) {
        auto b = text.find_first_not_of(' ', pos);
        if (b == std::string_view::npos) {
          break;
        }
        auto e = text.find(' ', b);
        e      = e == std::string_view::npos ? text.size() : e;
        tokens.emplace_back(text.substr(b, e - b));
        pos = e;
      }
    } else {
      for (char c : text) {
        tokens.emplace_back(1, c);
      }
    }
    std::vector<Cell> cells;
    cells.reserve(tokens.size());
    for (auto const& t : tokens) {
      cells.push_back(t == "_" ? kBlank : alphabet.index_of(t));
    }
    return PartialCyclicWord(std::move(cells));
  }

  struct Level {
    std::int64_t      period;
    PartialCyclicWord word;

    friend bool operator==(Level const&, Level const&) = default;
  };

  //! Unvalidated tower data; see validate_tower().
  struct TowerData {
    Alphabet                          alphabet;
    std::vector<Level>                levels;
    std::optional<SupernaturalNumber> declared_scale;

    friend bool operator==(TowerData const&, TowerData const&) = default;
  };

  class SkeletonTower;
  SkeletonTower validate_tower(TowerData raw);

  //! A validated tower.  Instances can only be obtained from validate_tower(),
  //! so every SkeletonTower satisfies the structural invariants.
  class SkeletonTower {
   public:
    Alphabet const& alphabet() const noexcept {
      return _data.alphabet;
    }

    std::vector<Level> const& levels() const noexcept {
      return _data.levels;
    }

    std::optional<SupernaturalNumber> const& declared_scale() const noexcept {
      return _data.declared_scale;
    }

    std::int64_t deepest_period() const noexcept {
      return _data.levels.back().period;
    }

    PartialCyclicWord const& deepest_word() const noexcept {
      return _data.levels.back().word;
    }

    std::vector<std::int64_t> periods() const {
      std::vector<std::int64_t> out;
      for (auto const& l : _data.levels) {
        out.push_back(l.period);
      }
      return out;
    }

    TowerData const& data() const noexcept {
      return _data;
    }

    friend bool operator==(SkeletonTower const&,
                           SkeletonTower const&) = default;

   private:
    explicit SkeletonTower(TowerData data) : _data(std::move(data)) {}
    friend SkeletonTower validate_tower(TowerData raw);

    TowerData _data;
  };

  namespace detail {

    // A Blank at level i must stay a P_i-hole: in the next level its residue
    // class modulo P_i may not be filled uniformly with a single symbol.
    inline void check_hole_persistence(std::vector<Level> const& levels,
                                       std::size_t               i) {
      auto const& shallow = levels[i];
      auto const& deep    = levels[i + 1];
      for (std::int64_t x = 0; x < shallow.period; ++x) {
        if (shallow.word.filled(x)) {
          continue;
        }
        Cell common = deep.word.at(x);
        bool uniform = common != kBlank;
        for (std::int64_t y = x + shallow.period; uniform && y < deep.period;
             y += shallow.period) {
          uniform = deep.word.at(y) == common;
        }
        if (uniform) {
          throw ConsistencyError(
              i, i + 1, x,
              "hole at index " + std::to_string(x) + " of period "
                  + std::to_string(shallow.period)
                  + " is filled periodically by period "
                  + std::to_string(deep.period));
        }
      }
    }

  }  // namespace detail

  inline SkeletonTower validate_tower(TowerData raw) {
    auto const& levels = raw.levels;
    if (levels.empty()) {
      throw DivisibilityError("a tower needs at least one level");
    }
    for (std::size_t i = 0; i < levels.size(); ++i) {
      auto const& l = levels[i];
      if (l.period <= 0) {
        throw DivisibilityError("periods must be positive");
      }
      if (l.word.length() != l.period) {
        throw DivisibilityError("level " + std::to_string(i) + " has period "
                                + std::to_string(l.period) + " but word length "
                                + std::to_string(l.word.length()));
      }
      for (Cell c : l.word.cells()) {
        if (c != kBlank
            && (c < 0 || static_cast<std::size_t>(c) >= raw.alphabet.size())) {
          throw AlphabetError("level " + std::to_string(i)
                              + " uses a cell outside the alphabet");
        }
      }
      if (i > 0) {
        auto prev = levels[i - 1].period;
        if (l.period <= prev) {
          throw DivisibilityError("periods must increase");
        }
        if (l.period % prev != 0) {
          throw DivisibilityError(std::to_string(prev) + " does not divide "
                                  + std::to_string(l.period));
        }
      }
    }
    // Adjacent levels suffice: both persistence rules are transitive.
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
      auto const& shallow = levels[i];
      auto const& deep    = levels[i + 1];
      for (std::int64_t x = 0; x < deep.period; ++x) {
        Cell c = shallow.word.at(x);
        if (c != kBlank && deep.word.at(x) != c) {
          throw ConsistencyError(i, i + 1, x,
                                 "filled cell at index " + std::to_string(x)
                                     + " of level " + std::to_string(i)
                                     + " is not preserved by level "
                                     + std::to_string(i + 1));
        }
      }
    }
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
      detail::check_hole_persistence(levels, i);
    }
    if (raw.declared_scale) {
      for (auto const& l : levels) {
        if (!raw.declared_scale->divisible_by(l.period)) {
          throw ScaleError("period " + std::to_string(l.period)
                           + " does not divide the declared scale "
                           + raw.declared_scale->to_string());
        }
      }
    }
    return SkeletonTower(std::move(raw));
  }

  inline SkeletonTower validate_tower(SkeletonTower const& t) {
    return validate_tower(t.data());
  }

  //! Builds a tower from compact word strings, e.g.
  //! make_tower({"0", "1"}, {{5, "0___0"}, {10, "0_1_00___0"}}).
  inline SkeletonTower make_tower(
      std::vector<std::string> const&                          symbols,
      std::vector<std::pair<std::int64_t, std::string>> const& levels,
      std::optional<SupernaturalNumber> scale = std::nullopt) {
    TowerData d{Alphabet(symbols), {}, std::move(scale)};
    for (auto const& [p, w] : levels) {
      d.levels.push_back({p, parse_word(d.alphabet, w)});
    }
    return validate_tower(std::move(d));
  }

  //! sigma^k applied to every level; level words satisfy w'(x) = w(x + k).
  inline SkeletonTower rotate_tower(SkeletonTower const& t, std::int64_t k) {
    auto d = t.data();
    for (auto& l : d.levels) {
      l.word = l.word.rotated(k);
    }
    return validate_tower(std::move(d));
  }

  //! The deepest level is authoritative.
  inline Cell symbol_at(SkeletonTower const& t, std::int64_t i) {
    return t.deepest_word().at(i);
  }

  //! Appends a level of period `period` (a multiple of the deepest period)
  //! that repeats the deepest word.  Used to align towers of different depth.
  inline SkeletonTower pad_tower(SkeletonTower const& t, std::int64_t period) {
    if (period == t.deepest_period()) {
      return t;
    }
    if (period % t.deepest_period() != 0) {
      throw IncompatiblePeriodsError(
          std::to_string(t.deepest_period()) + " does not divide "
          + std::to_string(period));
    }
    auto d = t.data();
    d.levels.push_back(
        {period, t.deepest_word().repeated(period / t.deepest_period())});
    return validate_tower(std::move(d));
  }

}  // namespace toeplitz
