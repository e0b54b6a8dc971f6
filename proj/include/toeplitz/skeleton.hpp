#pragma once

// Periodicity calculus on towers.  Residue statuses are three-valued:
//
//   In(a)    every completion has the whole class r + pZ equal to a,
//   Out      no completion has r in Per_p,
//   Unknown  completions disagree.
//
// Statuses are read from the deepest level only.  Below the deepest period a
// class is In when all its cells are filled with one symbol and Out when two
// filled cells differ.  At the deepest period itself the word is the skeleton
// of its stage, so a Blank there is a hole.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "toeplitz/core.hpp"
#include "toeplitz/error.hpp"
#include "toeplitz/supernatural.hpp"

namespace toeplitz {

  enum class Membership : std::uint8_t { In, Out, Unknown };

  struct ResidueStatus {
    Membership membership = Membership::Unknown;
    Cell       symbol     = kBlank;  // set exactly when membership == In

    friend bool operator==(ResidueStatus const&,
                           ResidueStatus const&) = default;
  };

  class ResidueStatusSet {
   public:
    explicit ResidueStatusSet(std::vector<ResidueStatus> status)
        : _status(std::move(status)) {}

    std::int64_t modulus() const noexcept {
      return static_cast<std::int64_t>(_status.size());
    }

    ResidueStatus const& at(std::int64_t i) const noexcept {
      return _status[static_cast<std::size_t>(mod(i, modulus()))];
    }

    Membership membership(std::int64_t i) const noexcept {
      return at(i).membership;
    }

    std::vector<std::int64_t> residues(Membership m) const {
      std::vector<std::int64_t> out;
      for (std::int64_t r = 0; r < modulus(); ++r) {
        if (_status[r].membership == m) {
          out.push_back(r);
        }
      }
      return out;
    }

    std::int64_t count(Membership m) const {
      return std::count_if(_status.begin(), _status.end(),
                           [m](auto const& s) { return s.membership == m; });
    }

    std::span<ResidueStatus const> statuses() const noexcept {
      return _status;
    }

    friend bool operator==(ResidueStatusSet const&,
                           ResidueStatusSet const&) = default;

   private:
    std::vector<ResidueStatus> _status;
  };

  namespace detail {

    inline void require_divisor(SkeletonTower const& t, std::int64_t p) {
      if (p <= 0 || t.deepest_period() % p != 0) {
        throw NonDivisorError(std::to_string(p)
                              + " does not divide the deepest period "
                              + std::to_string(t.deepest_period()));
      }
    }

    // Status of every residue modulo g, where g divides word.length().
    inline ResidueStatusSet scan_residues(PartialCyclicWord const& word,
                                          std::int64_t             g) {
      auto const                 n = word.length();
      std::vector<ResidueStatus> out(static_cast<std::size_t>(g));
      for (std::int64_t r = 0; r < g; ++r) {
        if (g == n) {
          Cell c = word.at(r);
          out[r] = c == kBlank ? ResidueStatus{Membership::Out, kBlank}
                               : ResidueStatus{Membership::In, c};
          continue;
        }
        Cell first     = kBlank;
        bool conflict  = false;
        bool saw_blank = false;
        for (std::int64_t x = r; x < n; x += g) {
          Cell c = word.at(x);
          if (c == kBlank) {
            saw_blank = true;
          } else if (first == kBlank) {
            first = c;
          } else if (c != first) {
            conflict = true;
            break;
          }
        }
        if (conflict) {
          out[r] = {Membership::Out, kBlank};
        } else if (!saw_blank) {
          out[r] = {Membership::In, first};
        } else {
          out[r] = {Membership::Unknown, kBlank};
        }
      }
      return ResidueStatusSet(std::move(out));
    }

  }  // namespace detail

  //! Certified approximation of Per_p; p must divide the deepest period.
  inline ResidueStatusSet periodic_part(SkeletonTower const& t,
                                        std::int64_t         p) {
    detail::require_divisor(t, p);
    return detail::scan_residues(t.deepest_word(), p);
  }

  struct SkeletonWord {
    PartialCyclicWord word;     // In residues carry their symbol
    std::vector<bool> unknown;  // residues whose status is Unknown

    std::vector<std::int64_t> unknown_residues() const {
      std::vector<std::int64_t> out;
      for (std::size_t i = 0; i < unknown.size(); ++i) {
        if (unknown[i]) {
          out.push_back(static_cast<std::int64_t>(i));
        }
      }
      return out;
    }

    friend bool operator==(SkeletonWord const&, SkeletonWord const&) = default;
  };

  inline SkeletonWord skeleton_from_status(ResidueStatusSet const& s) {
    std::vector<Cell> cells(static_cast<std::size_t>(s.modulus()), kBlank);
    std::vector<bool> unknown(cells.size(), false);
    for (std::int64_t r = 0; r < s.modulus(); ++r) {
      auto const& st = s.at(r);
      if (st.membership == Membership::In) {
        cells[r] = st.symbol;
      } else if (st.membership == Membership::Unknown) {
        unknown[r] = true;
      }
    }
    return {PartialCyclicWord(std::move(cells)), std::move(unknown)};
  }

  inline SkeletonWord skeleton_word(SkeletonTower const& t, std::int64_t p) {
    return skeleton_from_status(periodic_part(t, p));
  }

  //! A maximal cyclic run of non-hole residues.  `length` is empty when the
  //! run contains an Unknown residue; `extent` is the run length counting
  //! Unknown residues as filled.
  struct BlockSpan {
    std::int64_t                start;
    std::optional<std::int64_t> length;
    std::int64_t                extent;
    bool                        wraps;

    friend bool operator==(BlockSpan const&, BlockSpan const&) = default;
  };

  struct BlockScan {
    std::vector<BlockSpan>    spans;  // sorted by start
    std::vector<std::int64_t> holes;  // Out residues
    bool                      has_unknown = false;

    std::optional<std::int64_t> min_certified_length() const {
      std::optional<std::int64_t> best;
      for (auto const& s : spans) {
        if (s.length && (!best || *s.length < *best)) {
          best = s.length;
        }
      }
      return best;
    }
  };

  inline BlockScan blocks_from_status(ResidueStatusSet const& s) {
    auto const p     = s.modulus();
    auto       holes = s.residues(Membership::Out);
    if (holes.empty()) {
      throw FullyPeriodicError("no certified hole at period "
                               + std::to_string(p));
    }
    BlockScan out;
    out.holes       = holes;
    out.has_unknown = s.count(Membership::Unknown) > 0;
    for (std::size_t h = 0; h < holes.size(); ++h) {
      auto from = holes[h] + 1;
      auto to   = h + 1 < holes.size() ? holes[h + 1] : holes[0] + p;
      if (to == from) {
        continue;
      }
      bool certified = true;
      for (auto x = from; x < to; ++x) {
        certified &= s.membership(x) == Membership::In;
      }
      auto extent = to - from;
      out.spans.push_back(
          {mod(from, p),
           certified ? std::optional<std::int64_t>(extent) : std::nullopt,
           extent, mod(from, p) + extent > p});
    }
    std::sort(out.spans.begin(), out.spans.end(),
              [](auto const& a, auto const& b) { return a.start < b.start; });
    return out;
  }

  //! Filled p-blocks delimited by certified holes.
  inline BlockScan filled_blocks(SkeletonTower const& t, std::int64_t p) {
    return blocks_from_status(periodic_part(t, p));
  }

  enum class EssentialStatus : std::uint8_t {
    EssentialCertified,
    NotEssentialCertified,
    Unknown
  };

  namespace detail {

    // Compares Per_p against every Per_q, q < p.  For q not dividing the
    // deepest period N the class x + qZ modulo N is x + gcd(q, N)Z, so the
    // status of Per_q is the status of Per_gcd(q,N).
    inline EssentialStatus essential_from(
        PartialCyclicWord const&                       word,
        std::int64_t                                   p,
        std::map<std::int64_t, ResidueStatusSet>&      cache) {
      auto const n      = word.length();
      auto       status = [&](std::int64_t g) -> ResidueStatusSet const& {
        auto it = cache.find(g);
        if (it == cache.end()) {
          it = cache.emplace(g, scan_residues(word, g)).first;
        }
        return it->second;
      };
      auto const& sp     = status(p);
      bool        has_in = sp.count(Membership::In) > 0;
      bool        empty  = sp.count(Membership::Out) == p;
      if (empty) {
        return EssentialStatus::NotEssentialCertified;
      }
      bool all_separated = has_in;
      for (std::int64_t q = 1; q < p; ++q) {
        auto const  g  = std::gcd(q, n);
        auto const& sq = status(g);
        auto const  l  = std::lcm(p, g);
        bool        separated = false;
        bool        equal     = true;
        for (std::int64_t x = 0; x < l; ++x) {
          auto a = sp.membership(x);
          auto b = sq.membership(x);
          if ((a == Membership::In && b == Membership::Out)
              || (a == Membership::Out && b == Membership::In)) {
            separated = true;
            break;
          }
          if (a == Membership::Unknown || b == Membership::Unknown || a != b) {
            equal = false;
          }
        }
        if (!separated && equal) {
          return EssentialStatus::NotEssentialCertified;
        }
        all_separated &= separated;
      }
      return all_separated ? EssentialStatus::EssentialCertified
                           : EssentialStatus::Unknown;
    }

  }  // namespace detail

  inline EssentialStatus essential_period_status(SkeletonTower const& t,
                                                 std::int64_t         p) {
    detail::require_divisor(t, p);
    std::map<std::int64_t, ResidueStatusSet> cache;
    return detail::essential_from(t.deepest_word(), p, cache);
  }

  inline std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d <= n; ++d) {
      if (n % d == 0) {
        out.push_back(d);
      }
    }
    return out;
  }

  struct ScaleTruncation {
    SupernaturalNumber                                   certified;
    std::vector<std::int64_t>                            pending;
    std::vector<std::pair<std::int64_t, EssentialStatus>> statuses;
  };

  //! lcm of the certified essential periods dividing the deepest period.
  inline ScaleTruncation scale_truncation(SkeletonTower const& t) {
    ScaleTruncation                          out;
    std::map<std::int64_t, ResidueStatusSet> cache;
    for (auto d : divisors(t.deepest_period())) {
      auto st = detail::essential_from(t.deepest_word(), d, cache);
      out.statuses.emplace_back(d, st);
      if (st == EssentialStatus::EssentialCertified) {
        if (t.declared_scale() && !t.declared_scale()->divisible_by(d)) {
          throw ScaleError("certified essential period " + std::to_string(d)
                           + " does not divide the declared scale "
                           + t.declared_scale()->to_string());
        }
        out.certified = supernatural_lcm(
            out.certified, SupernaturalNumber::from_integer(d));
      } else if (st == EssentialStatus::Unknown) {
        out.pending.push_back(d);
      }
    }
    return out;
  }

  //! An integer dividing the scale of every completion.  If q does not divide
  //! the scale u then Per_q = Per_gcd(q,u) = Per_{q/l} for some prime l | q,
  //! so any q whose skeleton is certified to grow over each Per_{q/l}
  //! divides u, and so does the lcm of all such q.
  inline std::int64_t scale_divisor_bound(SkeletonTower const& t) {
    auto const&                              word = t.deepest_word();
    std::map<std::int64_t, ResidueStatusSet> cache;
    auto status = [&](std::int64_t g) -> ResidueStatusSet const& {
      auto it = cache.find(g);
      if (it == cache.end()) {
        it = cache.emplace(g, detail::scan_residues(word, g)).first;
      }
      return it->second;
    };
    std::int64_t out = 1;
    for (auto q : divisors(t.deepest_period())) {
      bool grows = q > 1;
      auto rest  = q;
      for (std::int64_t l = 2; l <= rest && grows; ++l) {
        if (rest % l != 0) {
          continue;
        }
        while (rest % l == 0) {
          rest /= l;
        }
        auto const& sq = status(q);
        auto const& sl = status(q / l);
        grows          = false;
        for (std::int64_t r = 0; r < q && !grows; ++r) {
          grows = sq.membership(r) == Membership::In
                  && sl.membership(r) == Membership::Out;
        }
      }
      if (grows) {
        out = std::lcm(out, q);
      }
    }
    return out;
  }

  //! The natural factorization: r_t = prod_{i <= t+1} p_i^min(k_i, t+1) with
  //! 1's and repeats deleted.  Returns at most `count` terms, fewer when the
  //! sequence is finite.
  inline std::vector<std::uint64_t> natural_factorization(
      SupernaturalNumber const& u,
      std::size_t               count) {
    if (u.is_one()) {
      throw EmptyScaleError("the natural factorization needs a prime factor");
    }
    // 1-based index of each prime of u among all primes
    std::vector<std::pair<std::uint64_t, std::uint64_t>> indexed;
    std::uint64_t                                        idx = 0;
    for (std::uint64_t q = 2; q <= u.largest_prime(); ++q) {
      if (detail::is_prime(q)) {
        ++idx;
        if (u.exponent(q) != 0) {
          indexed.emplace_back(q, idx);
        }
      }
    }
    std::uint64_t bound = idx;  // index of the largest prime
    for (auto [q, e] : u.factors()) {
      if (e != kInfinity) {
        bound = std::max<std::uint64_t>(bound, e);
      }
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t t = 0; out.size() < count; ++t) {
      std::uint64_t r = 1;
      for (auto [q, i] : indexed) {
        if (i <= t + 1) {
          auto e = std::min<std::uint64_t>(u.exponent(q), t + 1);
          r      = detail::checked_mul(r,
                                  detail::checked_pow(q, static_cast<Exponent>(e)));
        }
      }
      if (r != 1 && (out.empty() || out.back() != r)) {
        out.push_back(r);
      }
      if (u.is_finite() && t + 1 >= bound) {
        break;
      }
    }
    return out;
  }

  struct LevelGrowth {
    std::int64_t                period;
    bool                        fully_periodic = false;
    std::optional<std::int64_t> min_block;  // over certified blocks
    std::optional<std::int64_t> min_gap;    // empty if any residue is Unknown
    std::int64_t                unknown_count = 0;
  };

  struct GrowthProfile {
    std::vector<LevelGrowth> levels;
    bool                     non_decreasing = true;
    bool                     strictly_increasing = true;
  };

  namespace detail {

    inline LevelGrowth level_growth(ResidueStatusSet const& s) {
      LevelGrowth g;
      g.period        = s.modulus();
      g.unknown_count = s.count(Membership::Unknown);
      auto holes      = s.residues(Membership::Out);
      if (holes.empty()) {
        g.fully_periodic = true;
        return g;
      }
      g.min_block = blocks_from_status(s).min_certified_length();
      if (g.unknown_count == 0) {
        std::int64_t best = g.period;
        for (std::size_t h = 0; h + 1 < holes.size(); ++h) {
          best = std::min(best, holes[h + 1] - holes[h]);
        }
        if (holes.size() > 1) {
          best = std::min(best, holes.front() + g.period - holes.back());
        }
        g.min_gap = best;
      }
      return g;
    }

    inline GrowthProfile summarize(std::vector<LevelGrowth> levels) {
      GrowthProfile                out{std::move(levels)};
      std::optional<std::int64_t> prev;
      for (auto const& l : out.levels) {
        if (!l.min_block) {
          continue;
        }
        if (prev) {
          out.non_decreasing &= *l.min_block >= *prev;
          out.strictly_increasing &= *l.min_block > *prev;
        }
        prev = l.min_block;
      }
      return out;
    }

    // The tower cut off after the level of period p.
    inline SkeletonTower truncate_at(SkeletonTower const& t, std::int64_t p) {
      auto d = t.data();
      auto it = std::find_if(d.levels.begin(), d.levels.end(),
                             [p](auto const& l) { return l.period == p; });
      if (it == d.levels.end()) {
        throw PeriodMismatchError(std::to_string(p)
                                  + " is not a declared period");
      }
      d.levels.erase(it + 1, d.levels.end());
      return validate_tower(std::move(d));
    }

  }  // namespace detail

  //! Per declared period, block and hole statistics of the stage ending at
  //! that period (each level is read as the skeleton of its own stage).
  inline GrowthProfile growth_profile(SkeletonTower const&      t,
                                      std::span<std::int64_t const> periods) {
    std::vector<LevelGrowth> levels;
    for (auto p : periods) {
      auto stage = detail::truncate_at(t, p);
      levels.push_back(detail::level_growth(periodic_part(stage, p)));
    }
    return detail::summarize(std::move(levels));
  }

  inline GrowthProfile growth_profile(SkeletonTower const& t) {
    auto ps = t.periods();
    return growth_profile(t, ps);
  }

}  // namespace toeplitz
