#pragma once

// Text formats and the doubling example generator.
//
// Tower file:
//
//   # comment
//   alphabet = 0 1
//   scale = 2^inf * 5          (optional)
//   period 5 = 0 _ _ _ 0
//   period 10 = 0 _ 1 _ 0 0 _ _ _ 0
//
// Code table:
//
//   len = 1
//   0 0 0 -> 0
//   ...                        (every window exactly once, any order)

#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "toeplitz/codes.hpp"
#include "toeplitz/core.hpp"
#include "toeplitz/error.hpp"
#include "toeplitz/supernatural.hpp"

namespace toeplitz {

  namespace detail {

    struct Token {
      std::string text;
      std::size_t column;  // 1-based
    };

    inline std::vector<Token> tokenize(std::string_view line) {
      std::vector<Token> out;
      std::size_t        i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'
                                   || line[i] == '\r')) {
          ++i;
        }
        auto b = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t'
               && line[i] != '\r') {
          ++i;
        }
        if (i > b) {
          out.push_back({std::string(line.substr(b, i - b)), b + 1});
        }
      }
      return out;
    }

    inline std::vector<std::string_view> split_lines(std::string_view text) {
      std::vector<std::string_view> out;
      std::size_t                   pos = 0;
      while (pos <= text.size()) {
        auto e = text.find('\n', pos);
        if (e == std::string_view::npos) {
          out.push_back(text.substr(pos));
          break;
        }
        out.push_back(text.substr(pos, e - pos));
        pos = e + 1;
      }
      return out;
    }

    inline std::string_view strip_comment(std::string_view line) {
      auto h = line.find('#');
      return h == std::string_view::npos ? line : line.substr(0, h);
    }

    inline std::int64_t parse_positive(Token const& t, std::size_t line) {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(),
                                       t.text.data() + t.text.size(), v);
      if (ec != std::errc() || ptr != t.text.data() + t.text.size() || v <= 0) {
        throw ParseError(line, t.column,
                         "expected a positive integer, found '" + t.text + "'");
      }
      return v;
    }

    inline void expect_equals(std::vector<Token> const& toks,
                              std::size_t               at,
                              std::size_t               line,
                              std::size_t               eol) {
      if (toks.size() <= at) {
        throw ParseError(line, eol, "expected '='");
      }
      if (toks[at].text != "=") {
        throw ParseError(line, toks[at].column,
                         "expected '=', found '" + toks[at].text + "'");
      }
    }

  }  // namespace detail

  //! Parses and validates a tower file.  Syntax errors raise ParseError;
  //! structural problems raise the validate_tower() errors.
  inline SkeletonTower parse_tower_file(std::string_view text) {
    std::optional<Alphabet>           alphabet;
    std::optional<SupernaturalNumber> scale;
    std::vector<Level>                levels;
    bool                              seen_scale = false;

    auto const lines = detail::split_lines(text);
    for (std::size_t ln = 1; ln <= lines.size(); ++ln) {
      auto body = detail::strip_comment(lines[ln - 1]);
      auto toks = detail::tokenize(body);
      if (toks.empty()) {
        continue;
      }
      auto const  eol = body.size() + 1;
      auto const& key = toks[0].text;
      if (key == "alphabet") {
        if (alphabet) {
          throw ParseError(ln, toks[0].column, "duplicate alphabet line");
        }
        detail::expect_equals(toks, 1, ln, eol);
        std::vector<std::string> symbols;
        for (std::size_t i = 2; i < toks.size(); ++i) {
          symbols.push_back(toks[i].text);
        }
        try {
          alphabet.emplace(std::move(symbols));
        } catch (Error const& e) {
          throw ParseError(ln, toks[0].column, e.what());
        }
      } else if (key == "scale") {
        if (seen_scale) {
          throw ParseError(ln, toks[0].column, "duplicate scale line");
        }
        if (!levels.empty()) {
          throw ParseError(ln, toks[0].column,
                           "scale must precede the period lines");
        }
        detail::expect_equals(toks, 1, ln, eol);
        seen_scale = true;
        auto start = toks.size() > 2 ? toks[2].column - 1 : body.size();
        try {
          scale = SupernaturalNumber::parse(body.substr(start));
        } catch (ParseError const& e) {
          throw ParseError(ln, start + e.column, e.message);
        }
      } else if (key == "period") {
        if (!alphabet) {
          throw ParseError(ln, toks[0].column,
                           "alphabet must precede the period lines");
        }
        if (toks.size() < 2) {
          throw ParseError(ln, eol, "expected a period");
        }
        auto p = detail::parse_positive(toks[1], ln);
        if (!levels.empty() && p <= levels.back().period) {
          throw ParseError(ln, toks[1].column, "periods must increase");
        }
        detail::expect_equals(toks, 2, ln, eol);
        std::vector<Cell> cells;
        for (std::size_t i = 3; i < toks.size(); ++i) {
          if (toks[i].text == "_") {
            cells.push_back(kBlank);
            continue;
          }
          auto c = alphabet->find(toks[i].text);
          if (!c) {
            throw ParseError(ln, toks[i].column,
                             "unknown symbol '" + toks[i].text + "'");
          }
          cells.push_back(*c);
        }
        if (static_cast<std::int64_t>(cells.size()) != p) {
          throw ParseError(ln, toks[1].column,
                           "period " + std::to_string(p) + " has "
                               + std::to_string(cells.size()) + " tokens");
        }
        levels.push_back({p, PartialCyclicWord(std::move(cells))});
      } else {
        throw ParseError(ln, toks[0].column, "unknown keyword '" + key + "'");
      }
    }
    if (!alphabet) {
      throw ParseError(lines.size(), 1, "missing alphabet line");
    }
    if (levels.empty()) {
      throw ParseError(lines.size(), 1, "missing period lines");
    }
    return validate_tower(TowerData{*alphabet, std::move(levels), scale});
  }

  //! Canonical text: one token per cell, single spaces, no comments.
  inline std::string serialize_tower(SkeletonTower const& t) {
    std::string out = "alphabet =";
    for (std::size_t i = 0; i < t.alphabet().size(); ++i) {
      out += ' ' + t.alphabet().symbol(static_cast<Cell>(i));
    }
    out += '\n';
    if (t.declared_scale()) {
      out += "scale = " + t.declared_scale()->to_string() + '\n';
    }
    for (auto const& l : t.levels()) {
      out += "period " + std::to_string(l.period) + " =";
      for (Cell c : l.word.cells()) {
        out += ' ';
        out += c == kBlank ? std::string("_") : t.alphabet().symbol(c);
      }
      out += '\n';
    }
    return out;
  }

  inline BlockCode parse_code_table(Alphabet const& alphabet,
                                    std::string_view text) {
    std::optional<std::int64_t>      radius;
    std::vector<std::optional<Cell>> table;
    std::size_t                      width = 0;

    auto const lines = detail::split_lines(text);
    for (std::size_t ln = 1; ln <= lines.size(); ++ln) {
      auto body = detail::strip_comment(lines[ln - 1]);
      auto toks = detail::tokenize(body);
      if (toks.empty()) {
        continue;
      }
      auto const eol = body.size() + 1;
      if (!radius) {
        if (toks[0].text != "len") {
          throw ParseError(ln, toks[0].column, "expected 'len = m'");
        }
        detail::expect_equals(toks, 1, ln, eol);
        if (toks.size() != 3) {
          throw ParseError(ln, eol, "expected a single length");
        }
        std::int64_t m = 0;
        auto const&  t = toks[2];
        auto [ptr, ec] = std::from_chars(t.text.data(),
                                         t.text.data() + t.text.size(), m);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size() || m < 0
            || m > 8) {
          throw ParseError(ln, t.column, "bad code length '" + t.text + "'");
        }
        radius = m;
        width  = static_cast<std::size_t>(2 * m + 1);
        std::size_t windows = 1;
        for (std::size_t i = 0; i < width; ++i) {
          windows *= alphabet.size();
        }
        table.assign(windows, std::nullopt);
        continue;
      }
      if (toks.size() != width + 2 || toks[width].text != "->") {
        throw ParseError(ln, toks[0].column,
                         "expected " + std::to_string(width)
                             + " symbols, '->' and an image");
      }
      std::size_t idx = 0;
      for (std::size_t i = 0; i <= width; ++i) {
        auto const& t = toks[i == width ? width + 1 : i];
        auto        c = alphabet.find(t.text);
        if (!c) {
          throw ParseError(ln, t.column, "unknown symbol '" + t.text + "'");
        }
        if (i < width) {
          idx = idx * alphabet.size() + static_cast<std::size_t>(*c);
        } else if (table[idx]) {
          throw ParseError(ln, toks[0].column, "duplicate window");
        } else {
          table[idx] = *c;
        }
      }
    }
    if (!radius) {
      throw ParseError(lines.size(), 1, "missing 'len = m' header");
    }
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (!table[i]) {
        // name the first missing window
        std::string w;
        auto        rest = i;
        std::vector<std::string> syms(width);
        for (auto j = width; j-- > 0;) {
          syms[j] = alphabet.symbol(static_cast<Cell>(rest % alphabet.size()));
          rest /= alphabet.size();
        }
        for (auto const& s : syms) {
          w += (w.empty() ? "" : " ") + s;
        }
        throw ParseError(lines.size(), 1, "missing window '" + w + "'");
      }
      cells.push_back(*table[i]);
    }
    return BlockCode(alphabet, *radius, std::move(cells));
  }

  inline std::string serialize_code_table(BlockCode const& c) {
    auto const& a     = c.alphabet();
    auto const  width = static_cast<std::size_t>(2 * c.radius() + 1);
    std::string out   = "len = " + std::to_string(c.radius()) + '\n';
    for (std::size_t i = 0; i < c.window_count(); ++i) {
      std::vector<std::string> syms(width);
      auto                     rest = i;
      for (auto j = width; j-- > 0;) {
        syms[j] = a.symbol(static_cast<Cell>(rest % a.size()));
        rest /= a.size();
      }
      for (auto const& s : syms) {
        out += s + ' ';
      }
      out += "-> " + a.symbol(c.table()[i]) + '\n';
    }
    return out;
  }

  //! Comma-separated entries, one per residue: `id` or the images of the
  //! alphabet in order joined by ':', e.g. "1:0,id,id,id,1:0".
  inline PositionwisePermutation parse_perms(Alphabet const& alphabet,
                                             std::string_view text) {
    std::vector<std::vector<Cell>> perms;
    std::size_t                    pos = 0;
    while (pos <= text.size()) {
      auto e     = text.find(',', pos);
      e          = e == std::string_view::npos ? text.size() : e;
      auto entry = detail::trim(text.substr(pos, e - pos));
      auto col   = pos + 1;
      if (entry == "id") {
        std::vector<Cell> id(alphabet.size());
        for (std::size_t i = 0; i < id.size(); ++i) {
          id[i] = static_cast<Cell>(i);
        }
        perms.push_back(std::move(id));
      } else {
        std::vector<Cell> images;
        std::size_t       q = 0;
        while (q <= entry.size()) {
          auto f   = entry.find(':', q);
          f        = f == std::string::npos ? entry.size() : f;
          auto sym = detail::trim(std::string_view(entry).substr(q, f - q));
          auto c   = alphabet.find(sym);
          if (!c) {
            throw ParseError(1, col, "unknown symbol '" + sym + "'");
          }
          images.push_back(*c);
          q = f + 1;
        }
        if (images.size() != alphabet.size()) {
          throw ParseError(1, col,
                           "entry has " + std::to_string(images.size())
                               + " images for "
                               + std::to_string(alphabet.size()) + " symbols");
        }
        perms.push_back(std::move(images));
      }
      pos = e + 1;
    }
    try {
      return PositionwisePermutation(alphabet, std::move(perms));
    } catch (ParseError const&) {
      throw;
    } catch (Error const& e) {
      throw ParseError(1, 1, e.what());
    }
  }

  inline std::string serialize_perms(PositionwisePermutation const& phi) {
    std::string out;
    for (std::size_t i = 0; i < phi.perms().size(); ++i) {
      auto const& p  = phi.perms()[i];
      bool        id = true;
      for (std::size_t a = 0; a < p.size(); ++a) {
        id &= p[a] == static_cast<Cell>(a);
      }
      out += i == 0 ? "" : ",";
      if (id) {
        out += "id";
        continue;
      }
      for (std::size_t a = 0; a < p.size(); ++a) {
        out += (a == 0 ? "" : ":") + phi.alphabet().symbol(p[a]);
      }
    }
    return out;
  }

  namespace detail {

    struct Run {
      std::int64_t start;
      std::int64_t length;
    };

    // Maximal runs of Blanks in a linear (not cyclic) word.
    inline std::vector<Run> blank_runs(std::vector<Cell> const& w) {
      std::vector<Run> out;
      for (std::size_t i = 0; i < w.size();) {
        if (w[i] != kBlank) {
          ++i;
          continue;
        }
        auto j = i;
        while (j < w.size() && w[j] == kBlank) {
          ++j;
        }
        out.push_back({static_cast<std::int64_t>(i),
                       static_cast<std::int64_t>(j - i)});
        i = j;
      }
      return out;
    }

  }  // namespace detail

  //! The binary tower with periods 5 * 2^j, j = 0..k.  Level 0 is "0___0";
  //! level j doubles level j-1 and then, for odd j, fills the middle of the
  //! leftmost triple hole with 1; for even j, fills the first two single
  //! holes with 0, the other single holes with 1 and the rightmost triple
  //! hole with 101.
  inline SkeletonTower generate_paper_example(std::int64_t k) {
    if (k < 0) {
      throw Error("the number of stages must be non-negative");
    }
    if (k > 40) {
      throw OverflowError("period 5 * 2^" + std::to_string(k) + " is too large");
    }
    Alphabet          alphabet({"0", "1"});
    std::vector<Cell> w{0, kBlank, kBlank, kBlank, 0};
    TowerData         d{alphabet, {{5, PartialCyclicWord(w)}},
                SupernaturalNumber::parse("2^inf * 5")};
    for (std::int64_t j = 1; j <= k; ++j) {
      auto half = w;
      w.insert(w.end(), half.begin(), half.end());
      auto runs = detail::blank_runs(w);
      if (j % 2 == 1) {
        for (auto const& r : runs) {
          if (r.length == 3) {
            w[r.start + 1] = 1;
            break;
          }
        }
      } else {
        int singles = 0;
        for (auto const& r : runs) {
          if (r.length == 1) {
            w[r.start] = singles++ < 2 ? 0 : 1;
          }
        }
        for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
          if (it->length == 3) {
            w[it->start]     = 1;
            w[it->start + 1] = 0;
            w[it->start + 2] = 1;
            break;
          }
        }
      }
      d.levels.push_back(
          {5 * (std::int64_t{1} << j), PartialCyclicWord(w)});
    }
    return validate_tower(std::move(d));
  }

}  // namespace toeplitz
