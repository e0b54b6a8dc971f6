#pragma once

// Conjugacy decisions on towers.
//
// Certificates follow the completion-paired reading: a Consistent block
// correspondence with matched Blank masks extends to completions by copying
// hole fills through the correspondence, which yields a blockwise bijection
// and hence a pointed conjugacy of the paired completions, provided the stage
// divides both scales.  Refutations only ever use fully-filled blocks, which
// are the same in every completion.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "toeplitz/core.hpp"
#include "toeplitz/error.hpp"
#include "toeplitz/skeleton.hpp"
#include "toeplitz/supernatural.hpp"
#include "toeplitz/union_find.hpp"

namespace toeplitz {

  using Block = std::vector<Cell>;

  //! Partial map between p-blocks (partial words of length p).
  struct BlockCorrespondence {
    std::int64_t           block_length = 0;
    std::map<Block, Block> pairs;

    BlockCorrespondence inverse() const {
      BlockCorrespondence out{block_length, {}};
      for (auto const& [s, t] : pairs) {
        out.pairs.emplace(t, s);
      }
      return out;
    }

    bool is_identity() const {
      return std::all_of(pairs.begin(), pairs.end(),
                         [](auto const& kv) { return kv.first == kv.second; });
    }

    friend bool operator==(BlockCorrespondence const&,
                           BlockCorrespondence const&) = default;
  };

  struct GammaConsistent {
    BlockCorrespondence correspondence;
  };

  //! Evidence from fully-filled blocks: the blocks at indices `first` and
  //! `second` either share a source but not a target (NotWellDefined) or
  //! share a target but not a source (NotInjective).
  struct GammaContradicted {
    enum class Kind : std::uint8_t { NotWellDefined, NotInjective };
    Kind         kind;
    std::int64_t first;
    std::int64_t second;
  };

  struct GammaUndetermined {
    std::string reason;
  };

  using GammaResult
      = std::variant<GammaConsistent, GammaContradicted, GammaUndetermined>;

  namespace detail {

    inline bool fully_filled(Block const& b) {
      return std::none_of(b.begin(), b.end(),
                          [](Cell c) { return c == kBlank; });
    }

    inline bool same_mask(Block const& a, Block const& b) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] == kBlank) != (b[i] == kBlank)) {
          return false;
        }
      }
      return true;
    }

    inline Block block_at(PartialCyclicWord const& w, std::int64_t start,
                          std::int64_t p) {
      Block b(static_cast<std::size_t>(p));
      for (std::int64_t i = 0; i < p; ++i) {
        b[i] = w.at(start + i);
      }
      return b;
    }

    // Deepest words of both towers written over a common period.
    inline std::pair<PartialCyclicWord, PartialCyclicWord> aligned_words(
        SkeletonTower const& a,
        SkeletonTower const& b) {
      auto na = a.deepest_period();
      auto nb = b.deepest_period();
      if (na == nb) {
        return {a.deepest_word(), b.deepest_word()};
      }
      if (nb % na == 0) {
        return {a.deepest_word().repeated(nb / na), b.deepest_word()};
      }
      if (na % nb == 0) {
        return {a.deepest_word(), b.deepest_word().repeated(na / nb)};
      }
      throw IncompatiblePeriodsError("deepest periods " + std::to_string(na)
                                     + " and " + std::to_string(nb)
                                     + " do not form a chain");
    }

    // Compares the p-blocks of `a` with those of `b` shifted by k.  Both words
    // have the same length, a multiple of p.
    inline GammaResult gamma_words(PartialCyclicWord const& a,
                                   PartialCyclicWord const& b,
                                   std::int64_t             p,
                                   std::int64_t             k) {
      auto const n = a.length();
      auto const blocks = n / p;

      std::map<Block, std::pair<Block, std::int64_t>> full_fwd, full_bwd;
      std::map<Block, Block>                          fwd, bwd;
      bool consistent = true;
      std::string reason;

      for (std::int64_t j = 0; j < blocks; ++j) {
        auto src = block_at(a, j * p, p);
        auto tgt = block_at(b, j * p + k, p);
        if (fully_filled(src) && fully_filled(tgt)) {
          auto [it, fresh] = full_fwd.emplace(src, std::pair{tgt, j});
          if (!fresh && it->second.first != tgt) {
            return GammaContradicted{
                GammaContradicted::Kind::NotWellDefined, it->second.second, j};
          }
          auto [jt, fresh2] = full_bwd.emplace(tgt, std::pair{src, j});
          if (!fresh2 && jt->second.first != src) {
            return GammaContradicted{
                GammaContradicted::Kind::NotInjective, jt->second.second, j};
          }
        }
        if (!consistent) {
          continue;
        }
        if (!same_mask(src, tgt)) {
          consistent = false;
          reason = "blank masks differ at block " + std::to_string(j);
          continue;
        }
        auto [it, fresh] = fwd.emplace(src, tgt);
        if (!fresh && it->second != tgt) {
          consistent = false;
          reason = "partial blocks map ambiguously at block " + std::to_string(j);
          continue;
        }
        auto [jt, fresh2] = bwd.emplace(tgt, src);
        if (!fresh2 && jt->second != src) {
          consistent = false;
          reason = "partial blocks collide at block " + std::to_string(j);
        }
      }
      if (consistent) {
        return GammaConsistent{BlockCorrespondence{p, std::move(fwd)}};
      }
      return GammaUndetermined{reason};
    }

    inline void require_same_alphabet(SkeletonTower const& a,
                                      SkeletonTower const& b) {
      if (!(a.alphabet() == b.alphabet())) {
        throw AlphabetMismatchError("towers have different alphabets");
      }
    }

  }  // namespace detail

  //! The positional correspondence between the p-blocks of A and of
  //! rotate(B, k), over one full (common) deepest period.
  inline GammaResult gamma_map(SkeletonTower const& a,
                               SkeletonTower const& b,
                               std::int64_t         p,
                               std::int64_t         k) {
    detail::require_same_alphabet(a, b);
    if (p <= 0 || a.deepest_period() % p != 0 || b.deepest_period() % p != 0) {
      throw IncompatiblePeriodsError(std::to_string(p)
                                     + " does not divide both deepest periods");
    }
    auto [wa, wb] = detail::aligned_words(a, b);
    return detail::gamma_words(wa, wb, p, mod(k, wa.length()));
  }

  ////////////////////////////////////////////////////////////////////////////
  // Verdicts
  ////////////////////////////////////////////////////////////////////////////

  struct ConjugateCertified {
    std::int64_t        stage;
    std::int64_t        shift;
    BlockCorrespondence witness;
    bool outright = false;  // no Blanks on either side: the subshifts are fixed
  };

  struct NotConjugateCertified {
    std::string        reason;
    SupernaturalNumber scale_a;
    SupernaturalNumber scale_b;
  };

  //! No conjugacy whose forward code has length <= radius exists.
  struct RefutedUpTo {
    std::int64_t              radius;
    std::int64_t              stage;  // the stage that refuted `radius`
    std::vector<std::int64_t> stages_examined;
  };

  struct VerdictUnknown {
    std::vector<std::string> diagnostics;
  };

  using Verdict = std::variant<ConjugateCertified,
                               NotConjugateCertified,
                               RefutedUpTo,
                               VerdictUnknown>;

  enum class VerdictTag : std::uint8_t {
    ConjugateCertified,
    NotConjugate,
    RefutedUpTo,
    Unknown
  };

  inline VerdictTag tag_of(Verdict const& v) {
    return static_cast<VerdictTag>(v.index());
  }

  inline std::string_view tag_name(VerdictTag t) {
    switch (t) {
      case VerdictTag::ConjugateCertified:
        return "conjugate-certified";
      case VerdictTag::NotConjugate:
        return "not-conjugate";
      case VerdictTag::RefutedUpTo:
        return "refuted-up-to";
      case VerdictTag::Unknown:
        return "unknown";
    }
    return "unknown";
  }

  //! 0 certified positive, 1 certified negative, 2 unknown.
  inline int exit_code(VerdictTag t) {
    switch (t) {
      case VerdictTag::ConjugateCertified:
        return 0;
      case VerdictTag::NotConjugate:
      case VerdictTag::RefutedUpTo:
        return 1;
      case VerdictTag::Unknown:
        return 2;
    }
    return 2;
  }

  namespace detail {

    inline std::vector<std::int64_t> common_stages(SkeletonTower const& a,
                                                   SkeletonTower const& b) {
      auto g = std::gcd(a.deepest_period(), b.deepest_period());
      std::vector<std::int64_t> out;
      for (auto const* t : {&a, &b}) {
        for (auto const& l : t->levels()) {
          if (g % l.period == 0) {
            out.push_back(l.period);
          }
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }

    inline SupernaturalNumber scale_bound(SkeletonTower const& t) {
      if (t.declared_scale()) {
        return *t.declared_scale();
      }
      return SupernaturalNumber::from_integer(
          static_cast<std::uint64_t>(scale_divisor_bound(t)));
    }

  }  // namespace detail

  inline Verdict conjugacy_verdict(SkeletonTower const& a,
                                   SkeletonTower const& b,
                                   std::int64_t         max_radius) {
    detail::require_same_alphabet(a, b);
    if (a.declared_scale() && b.declared_scale()
        && !supernatural_equal(*a.declared_scale(), *b.declared_scale())) {
      return NotConjugateCertified{"scale", *a.declared_scale(),
                                   *b.declared_scale()};
    }
    std::optional<std::pair<PartialCyclicWord, PartialCyclicWord>> words;
    try {
      words = detail::aligned_words(a, b);
    } catch (IncompatiblePeriodsError const& e) {
      return VerdictUnknown{{e.what()}};
    }
    auto const& [wa, wb] = *words;
    auto const n         = wa.length();
    auto const stages    = detail::common_stages(a, b);
    bool const outright  = a.deepest_word().blank_count() == 0
                          && b.deepest_word().blank_count() == 0;

    // A consistent Gamma pairs completions only where the p-classes of both
    // sides are distinct, i.e. where p divides both scales.
    auto const bound_a = detail::scale_bound(a);
    auto const bound_b = detail::scale_bound(b);
    std::vector<std::string> uncertifiable;

    // kind of gamma per (stage, shift): 0 consistent, 1 contradicted, 2 other
    std::vector<std::vector<std::uint8_t>> kinds;
    for (auto p : stages) {
      bool const certifiable = divides(static_cast<std::uint64_t>(p), bound_a)
                               && divides(static_cast<std::uint64_t>(p), bound_b);
      auto& row = kinds.emplace_back(static_cast<std::size_t>(n));
      for (std::int64_t k = 0; k < n; ++k) {
        auto g = detail::gamma_words(wa, wb, p, k);
        if (auto* c = std::get_if<GammaConsistent>(&g)) {
          if (certifiable) {
            return ConjugateCertified{p, k, std::move(c->correspondence),
                                      outright};
          }
          if (std::count(row.begin(), row.begin() + k, 0) == 0) {
            uncertifiable.push_back(
                "stage " + std::to_string(p) + " shift " + std::to_string(k)
                + ": gamma consistent but " + std::to_string(p)
                + " is not known to divide both scales");
          }
          row[k] = 0;
          continue;
        }
        row[k] = std::holds_alternative<GammaContradicted>(g) ? 1 : 2;
      }
    }
    // Period 1 divides every scale: a symbolwise bijection after a shift.
    for (std::int64_t k = 0; k < n; ++k) {
      auto g = detail::gamma_words(wa, wb, 1, k);
      if (auto* c = std::get_if<GammaConsistent>(&g)) {
        return ConjugateCertified{1, k, std::move(c->correspondence), outright};
      }
    }

    // Refutation.  A conjugacy of length <= m sends A's point to a point
    // whose deepest skeleton is a shift k of B's, with [-m, m] inside its
    // p-periodic part whenever [-2m, 2m] is inside A's; Gamma must then be
    // consistent at (p, k).
    for (auto m = max_radius; m >= 0; --m) {
      for (std::size_t si = 0; si < stages.size(); ++si) {
        auto const p  = stages[si];
        auto const sa = periodic_part(a, p);
        bool       margin = true;
        for (auto r = -2 * m; r <= 2 * m && margin; ++r) {
          margin = sa.membership(r) == Membership::In;
        }
        if (!margin) {
          continue;
        }
        auto const sb      = periodic_part(b, p);
        bool       refuted = true;
        for (std::int64_t k = 0; k < n && refuted; ++k) {
          bool candidate = true;
          for (auto r = -m; r <= m && candidate; ++r) {
            candidate = sb.membership(r + k) != Membership::Out;
          }
          refuted = !candidate || kinds[si][k] == 1;
        }
        if (refuted) {
          return RefutedUpTo{m, p, stages};
        }
      }
    }

    VerdictUnknown u;
    for (std::size_t si = 0; si < stages.size(); ++si) {
      auto contradicted = std::count(kinds[si].begin(), kinds[si].end(), 1);
      auto consistent   = std::count(kinds[si].begin(), kinds[si].end(), 0);
      auto const sa     = periodic_part(a, stages[si]);
      std::int64_t margin = -1;
      while (margin + 1 <= max_radius) {
        bool ok = true;
        for (auto r = -2 * (margin + 1); r <= 2 * (margin + 1) && ok; ++r) {
          ok = sa.membership(r) == Membership::In;
        }
        if (!ok) {
          break;
        }
        ++margin;
      }
      u.diagnostics.push_back(
          "stage " + std::to_string(stages[si]) + ": " + std::to_string(n)
          + " shifts, " + std::to_string(contradicted) + " contradicted, "
          + std::to_string(consistent) + " consistent, "
          + std::to_string(n - contradicted - consistent)
          + " undetermined, source margin "
          + (margin < 0 ? std::string("none")
                        : "radius " + std::to_string(margin)));
    }
    if (stages.empty()) {
      u.diagnostics.push_back("no declared period divides both deepest periods");
    }
    u.diagnostics.insert(u.diagnostics.end(), uncertifiable.begin(),
                         uncertifiable.end());
    u.diagnostics.push_back(
        "refutations bound the forward code only");
    return u;
  }

  ////////////////////////////////////////////////////////////////////////////
  // Parts, Parts_* and chi
  ////////////////////////////////////////////////////////////////////////////

  using TowerPtr = std::shared_ptr<SkeletonTower const>;

  inline TowerPtr share(SkeletonTower t) {
    return std::make_shared<SkeletonTower const>(std::move(t));
  }

  //! The closure of {sigma^i(alpha) : i = residue mod period}.
  struct Part {
    TowerPtr     base;
    std::int64_t period;
    std::int64_t residue;

    SkeletonWord skeleton() const {
      return skeleton_word(rotate_tower(*base, residue), period);
    }

    friend bool operator==(Part const& x, Part const& y) {
      return x.period == y.period && x.residue == y.residue
             && (x.base == y.base || *x.base == *y.base);
    }
  };

  enum class StarStatus : std::uint8_t { Starred, NotStarred, Unknown };

  struct StarredPart {
    Part                        part;
    StarStatus                  status;
    std::optional<std::int64_t> length;  // only for Starred parts
  };

  //! Parts whose skeleton has a filled cell at 0 and a hole at -1.
  inline std::vector<StarredPart> parts_star(TowerPtr const& t,
                                             std::int64_t    p) {
    auto const               s = periodic_part(*t, p);
    std::vector<StarredPart> out;
    for (std::int64_t k = 0; k < p; ++k) {
      auto here = s.membership(k);
      auto prev = s.membership(k - 1);
      StarredPart sp{Part{t, p, k}, StarStatus::Unknown, std::nullopt};
      if (here == Membership::Out || prev == Membership::In) {
        sp.status = StarStatus::NotStarred;
      } else if (here == Membership::In && prev == Membership::Out) {
        sp.status = StarStatus::Starred;
        for (std::int64_t j = 0; j < p; ++j) {
          auto m = s.membership(k + j);
          if (m == Membership::Out) {
            sp.length = j;
            break;
          }
          if (m == Membership::Unknown) {
            break;
          }
        }
      }
      out.push_back(std::move(sp));
    }
    return out;
  }

  inline std::vector<StarredPart> parts_star(SkeletonTower const& t,
                                             std::int64_t         p) {
    return parts_star(share(t), p);
  }

  struct ChiStage {
    std::vector<Part> parts;  // ascending residue
    bool              complete = true;

    std::vector<std::int64_t> residues() const {
      std::vector<std::int64_t> out;
      for (auto const& x : parts) {
        out.push_back(x.residue);
      }
      return out;
    }
  };

  //! Parts centred on the midpoints of the filled p-blocks: a starred part
  //! at k with block length j contributes residue k + floor(j/2).
  inline ChiStage chi_stage(TowerPtr const& t, std::int64_t p) {
    ChiStage                  out;
    std::vector<std::int64_t> residues;
    for (auto const& sp : parts_star(t, p)) {
      if (sp.status == StarStatus::Unknown
          || (sp.status == StarStatus::Starred && !sp.length)) {
        out.complete = false;
        continue;
      }
      if (sp.status == StarStatus::Starred) {
        residues.push_back(mod(sp.part.residue + *sp.length / 2, p));
      }
    }
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()),
                   residues.end());
    for (auto r : residues) {
      out.parts.push_back(Part{t, p, r});
    }
    return out;
  }

  inline ChiStage chi_stage(SkeletonTower const& t, std::int64_t p) {
    return chi_stage(share(t), p);
  }

  ////////////////////////////////////////////////////////////////////////////
  // D_p and E^fin
  ////////////////////////////////////////////////////////////////////////////

  struct DpConsistent {
    BlockCorrespondence witness;
    std::int64_t        block_rotation;  // j: the shift is j * p
  };

  struct DpRefuted {};

  struct DpUndetermined {
    std::string reason;
  };

  using DpResult = std::variant<DpConsistent, DpRefuted, DpUndetermined>;

  //! Searches block-aligned shifts j*p for a blockwise correspondence between
  //! the two parts.
  inline DpResult dp_equivalent(Part const& w, Part const& z) {
    if (w.period != z.period) {
      throw PeriodMismatchError("parts have periods "
                                + std::to_string(w.period) + " and "
                                + std::to_string(z.period));
    }
    detail::require_same_alphabet(*w.base, *z.base);
    if (w.base->deepest_period() != z.base->deepest_period()) {
      throw PeriodMismatchError("parts come from towers of different depth");
    }
    auto const p  = w.period;
    auto const n  = w.base->deepest_period();
    auto const wa = w.base->deepest_word().rotated(w.residue);
    auto const wb = z.base->deepest_word().rotated(z.residue);
    bool       all_contradicted = true;
    for (std::int64_t j = 0; j < n / p; ++j) {
      auto g = detail::gamma_words(wa, wb, p, j * p);
      if (auto* c = std::get_if<GammaConsistent>(&g)) {
        return DpConsistent{std::move(c->correspondence), j};
      }
      all_contradicted &= std::holds_alternative<GammaContradicted>(g);
    }
    if (all_contradicted) {
      return DpRefuted{};
    }
    return DpUndetermined{"no block-aligned shift is consistent or refuted"};
  }

  enum class EfinOutcome : std::uint8_t { CertifiedEqual, Refuted, Undetermined };

  inline std::string_view outcome_name(EfinOutcome o) {
    switch (o) {
      case EfinOutcome::CertifiedEqual:
        return "certified-equal";
      case EfinOutcome::Refuted:
        return "refuted";
      case EfinOutcome::Undetermined:
        return "undetermined";
    }
    return "undetermined";
  }

  enum class EdgeLabel : std::uint8_t { Equivalent, Inequivalent, Undetermined };

  struct EfinResult {
    EfinOutcome outcome;
    //! Classes of the certified closure; nodes 0..|S|-1 are S, the rest T.
    std::vector<std::vector<std::size_t>> classes;
  };

  //! E^fin comparison from pairwise labels.  `edge(i, j)` is called for every
  //! i < j over the S nodes followed by the T nodes.  CertifiedEqual when
  //! every class of the Equivalent closure meets both sides; Refuted when no
  //! coarsening of it that respects the Inequivalent labels does.
  inline EfinResult efin_decide(
      std::size_t                                         s_count,
      std::size_t                                         t_count,
      std::function<EdgeLabel(std::size_t, std::size_t)> const& edge) {
    auto const n = s_count + t_count;
    std::vector<std::vector<EdgeLabel>> label(
        n, std::vector<EdgeLabel>(n, EdgeLabel::Undetermined));
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i) {
      label[i][i] = EdgeLabel::Equivalent;
      for (std::size_t j = i + 1; j < n; ++j) {
        label[i][j] = label[j][i] = edge(i, j);
        if (label[i][j] == EdgeLabel::Equivalent) {
          uf.unite(i, j);
        }
      }
    }
    EfinResult out{EfinOutcome::CertifiedEqual, uf.classes()};
    auto in_s = [&](std::size_t v) { return v < s_count; };

    auto separated = [&](std::size_t c, std::size_t d) {
      for (auto x : out.classes[c]) {
        for (auto y : out.classes[d]) {
          if (label[x][y] == EdgeLabel::Inequivalent) {
            return true;
          }
        }
      }
      return false;
    };

    auto const               m = out.classes.size();
    std::vector<std::uint8_t> side(m, 0);  // bit 0: meets S, bit 1: meets T
    for (std::size_t c = 0; c < m; ++c) {
      for (auto v : out.classes[c]) {
        side[c] |= in_s(v) ? 1 : 2;
      }
    }
    if (std::all_of(side.begin(), side.end(), [](auto x) { return x == 3; })) {
      return out;
    }

    // Undetermined unless no merge of closure classes that respects the
    // Inequivalent labels leaves every block meeting both sides.
    std::vector<std::vector<bool>> sep(m, std::vector<bool>(m, false));
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t d = c + 1; d < m; ++d) {
        sep[c][d] = sep[d][c] = separated(c, d);
      }
    }
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::uint8_t>             block_side;
    std::function<bool(std::size_t)>      search = [&](std::size_t c) {
      if (c == m) {
        return std::all_of(block_side.begin(), block_side.end(),
                           [](auto x) { return x == 3; });
      }
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (std::any_of(blocks[b].begin(), blocks[b].end(),
                        [&](auto x) { return sep[c][x]; })) {
          continue;
        }
        blocks[b].push_back(c);
        auto saved = block_side[b];
        block_side[b] |= side[c];
        if (search(c + 1)) {
          return true;
        }
        block_side[b] = saved;
        blocks[b].pop_back();
      }
      blocks.push_back({c});
      block_side.push_back(side[c]);
      if (search(c + 1)) {
        return true;
      }
      blocks.pop_back();
      block_side.pop_back();
      return false;
    };
    out.outcome = search(0) ? EfinOutcome::Undetermined : EfinOutcome::Refuted;
    return out;
  }

  inline EdgeLabel edge_label(DpResult const& r) {
    if (std::holds_alternative<DpConsistent>(r)) {
      return EdgeLabel::Equivalent;
    }
    if (std::holds_alternative<DpRefuted>(r)) {
      return EdgeLabel::Inequivalent;
    }
    return EdgeLabel::Undetermined;
  }

  inline EfinResult efin_equal(std::span<Part const> s,
                               std::span<Part const> t,
                               std::int64_t          p) {
    std::vector<Part> nodes(s.begin(), s.end());
    nodes.insert(nodes.end(), t.begin(), t.end());
    for (auto const& x : nodes) {
      if (x.period != p) {
        throw PeriodMismatchError("part of period " + std::to_string(x.period)
                                  + " in a comparison at period "
                                  + std::to_string(p));
      }
    }
    return efin_decide(s.size(), t.size(), [&](std::size_t i, std::size_t j) {
      return edge_label(dp_equivalent(nodes[i], nodes[j]));
    });
  }

  ////////////////////////////////////////////////////////////////////////////
  // Stage-wise invariant comparison
  ////////////////////////////////////////////////////////////////////////////

  enum class StageOutcome : std::uint8_t {
    NotEvaluable,  // the stage does not divide both deepest periods
    Incomplete,    // chi is not fully determined on one side
    CertifiedEqual,
    Refuted,
    Undetermined
  };

  inline std::string_view outcome_name(StageOutcome o) {
    switch (o) {
      case StageOutcome::NotEvaluable:
        return "not-evaluable";
      case StageOutcome::Incomplete:
        return "incomplete";
      case StageOutcome::CertifiedEqual:
        return "certified-equal";
      case StageOutcome::Refuted:
        return "refuted";
      case StageOutcome::Undetermined:
        return "undetermined";
    }
    return "undetermined";
  }

  struct StageReport {
    std::uint64_t               period;
    StageOutcome                outcome = StageOutcome::NotEvaluable;
    std::size_t                 chi_a   = 0;
    std::size_t                 chi_b   = 0;
    bool                        empty_stage = false;  // both chi sets empty
    std::optional<std::int64_t> min_block_a;
    std::optional<std::int64_t> min_block_b;
    //! Largest m with both minimal block lengths above 4m + 6 (advisory).
    std::optional<std::int64_t> trusted_radius;
  };

  enum class InvariantSummary : std::uint8_t {
    EquivalentSuffix,
    NotEquivalent,
    Undetermined
  };

  inline std::string_view summary_name(InvariantSummary s) {
    switch (s) {
      case InvariantSummary::EquivalentSuffix:
        return "equivalent-suffix";
      case InvariantSummary::NotEquivalent:
        return "not-equivalent";
      case InvariantSummary::Undetermined:
        return "undetermined";
    }
    return "undetermined";
  }

  struct InvariantReport {
    SupernaturalNumber         scale_a;
    SupernaturalNumber         scale_b;
    bool                       scale_mismatch = false;
    std::vector<std::uint64_t> factorization;
    std::vector<StageReport>   stages;
    //! Number of trailing evaluated stages that are CertifiedEqual.
    std::size_t      equal_suffix = 0;
    InvariantSummary summary      = InvariantSummary::Undetermined;
  };

  namespace detail {

    inline std::optional<std::int64_t> min_block(SkeletonTower const& t,
                                                 std::int64_t         p) {
      try {
        return filled_blocks(t, p).min_certified_length();
      } catch (FullyPeriodicError const&) {
        return std::nullopt;
      }
    }

  }  // namespace detail

  inline InvariantReport invariant_compare(SkeletonTower const& a,
                                           SkeletonTower const& b,
                                           std::size_t          stages) {
    if (!a.declared_scale() || !b.declared_scale()) {
      throw MissingScaleError("invariant comparison needs declared scales");
    }
    detail::require_same_alphabet(a, b);
    InvariantReport out;
    out.scale_a = *a.declared_scale();
    out.scale_b = *b.declared_scale();
    if (!supernatural_equal(out.scale_a, out.scale_b)) {
      out.scale_mismatch = true;
      out.summary        = InvariantSummary::NotEquivalent;
      return out;
    }
    out.factorization = natural_factorization(out.scale_a, stages);

    // dp comparisons need one common deepest period
    auto const na = a.deepest_period();
    auto const nb = b.deepest_period();
    std::optional<TowerPtr> pa, pb;
    if (na % nb == 0 || nb % na == 0) {
      auto n = std::max(na, nb);
      pa     = share(pad_tower(a, n));
      pb     = share(pad_tower(b, n));
    }
    auto const sa = share(a);
    auto const sb = share(b);

    for (auto r : out.factorization) {
      StageReport st;
      st.period = r;
      auto p    = static_cast<std::int64_t>(r);
      if (na % p != 0 || nb % p != 0 || !pa) {
        out.stages.push_back(st);
        continue;
      }
      st.min_block_a = detail::min_block(a, p);
      st.min_block_b = detail::min_block(b, p);
      if (st.min_block_a && st.min_block_b) {
        auto shortest = std::min(*st.min_block_a, *st.min_block_b);
        if (shortest >= 7) {
          st.trusted_radius = (shortest - 7) / 4;
        }
      }
      auto ca = chi_stage(sa, p);
      auto cb = chi_stage(sb, p);
      st.chi_a       = ca.parts.size();
      st.chi_b       = cb.parts.size();
      st.empty_stage = ca.parts.empty() && cb.parts.empty();
      if (!ca.complete || !cb.complete) {
        st.outcome = StageOutcome::Incomplete;
        out.stages.push_back(st);
        continue;
      }
      for (auto& x : ca.parts) {
        x.base = *pa;
      }
      for (auto& x : cb.parts) {
        x.base = *pb;
      }
      auto e = efin_equal(ca.parts, cb.parts, p);
      switch (e.outcome) {
        case EfinOutcome::CertifiedEqual:
          st.outcome = StageOutcome::CertifiedEqual;
          break;
        case EfinOutcome::Refuted:
          st.outcome = StageOutcome::Refuted;
          break;
        case EfinOutcome::Undetermined:
          st.outcome = StageOutcome::Undetermined;
          break;
      }
      out.stages.push_back(st);
    }

    for (auto it = out.stages.rbegin(); it != out.stages.rend(); ++it) {
      if (it->outcome == StageOutcome::NotEvaluable) {
        continue;
      }
      if (it->outcome != StageOutcome::CertifiedEqual) {
        break;
      }
      ++out.equal_suffix;
    }
    out.summary = out.equal_suffix > 0 ? InvariantSummary::EquivalentSuffix
                                       : InvariantSummary::Undetermined;
    return out;
  }

}  // namespace toeplitz
