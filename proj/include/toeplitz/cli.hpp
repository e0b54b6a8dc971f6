#pragma once

// Command-line surface.  run_command() is the whole program; tools/toeplitz.cpp
// only forwards argv.
//
// Exit codes: 0 success or certified positive, 1 certified negative,
// 2 unknown, 3 usage, 4 parse or I/O failure, 5 validation or domain error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toeplitz/codes.hpp"
#include "toeplitz/conjugacy.hpp"
#include "toeplitz/core.hpp"
#include "toeplitz/error.hpp"
#include "toeplitz/io.hpp"
#include "toeplitz/report.hpp"
#include "toeplitz/skeleton.hpp"
#include "toeplitz/supernatural.hpp"

namespace toeplitz {

  namespace cli {

    inline constexpr int kExitUsage  = 3;
    inline constexpr int kExitParse  = 4;
    inline constexpr int kExitDomain = 5;

    class IoError : public Error {
      using Error::Error;
    };

    inline std::string read_file(std::filesystem::path const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw IoError("cannot read " + path.string());
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    inline void write_file(std::filesystem::path const& path,
                           std::string const&           text) {
      std::ofstream out(path, std::ios::binary);
      if (!out || !(out << text)) {
        throw IoError("cannot write " + path.string());
      }
    }

    inline SkeletonTower load_tower(std::filesystem::path const& path) {
      try {
        return parse_tower_file(read_file(path));
      } catch (ParseError const& e) {
        throw ParseError(e.line, e.column, path.string() + ": " + e.message);
      }
    }

    inline std::string_view essential_name(EssentialStatus s) {
      switch (s) {
        case EssentialStatus::EssentialCertified:
          return "essential";
        case EssentialStatus::NotEssentialCertified:
          return "not-essential";
        case EssentialStatus::Unknown:
          return "unknown";
      }
      return "unknown";
    }

    // Skeleton with Unknown residues shown as '?'.
    inline std::string render_skeleton(Alphabet const&     a,
                                       SkeletonWord const& s) {
      std::string out;
      bool        compact = a.single_char();
      for (std::int64_t i = 0; i < s.word.length(); ++i) {
        if (!compact && i > 0) {
          out += ' ';
        }
        if (s.unknown[i]) {
          out += '?';
        } else if (s.word.at(i) == kBlank) {
          out += '_';
        } else {
          out += a.symbol(s.word.at(i));
        }
      }
      return out;
    }

    inline Report::Json optional_json(std::optional<std::int64_t> v) {
      return v ? Report::Json(*v) : Report::Json(nullptr);
    }

    inline Report analyze_report(SkeletonTower const&       t,
                                 std::optional<std::size_t> depth) {
      Report r;
      auto   periods = t.periods();
      if (depth && *depth < periods.size()) {
        periods.resize(*depth);
      }
      std::vector<std::string> symbols;
      for (std::size_t i = 0; i < t.alphabet().size(); ++i) {
        symbols.push_back(t.alphabet().symbol(static_cast<Cell>(i)));
      }
      r.set({"tower", "alphabet"}, symbols);
      r.set({"tower", "periods"}, t.periods());
      r.set({"tower", "scale"},
            t.declared_scale() ? Report::Json(t.declared_scale()->to_string())
                               : Report::Json(nullptr));
      auto const growth = growth_profile(t, periods);
      for (auto const p : periods) {
        auto const s  = periodic_part(t, p);
        auto const ps = std::to_string(p);
        r.set({"period", ps, "in"}, s.count(Membership::In));
        r.set({"period", ps, "out"}, s.count(Membership::Out));
        r.set({"period", ps, "unknown"}, s.count(Membership::Unknown));
        r.set({"period", ps, "skeleton"},
              render_skeleton(t.alphabet(), skeleton_from_status(s)));
      }
      auto const scale = scale_truncation(t);
      for (auto const& [d, st] : scale.statuses) {
        r.set({"essential", std::to_string(d)},
              std::string(essential_name(st)));
      }
      r.set({"scale", "certified"}, scale.certified.to_string());
      r.set({"scale", "pending"}, scale.pending);
      std::vector<Report::Json> blocks, gaps;
      for (auto const& l : growth.levels) {
        blocks.push_back(optional_json(l.min_block));
        gaps.push_back(optional_json(l.min_gap));
      }
      // each declared level read as the skeleton of its own stage
      r.set({"growth", "periods"}, periods);
      r.set({"growth", "min_block"}, blocks);
      r.set({"growth", "min_gap"}, gaps);
      r.set({"growth", "non_decreasing"}, growth.non_decreasing);
      r.set({"growth", "strictly_increasing"}, growth.strictly_increasing);
      return r;
    }

    inline std::string render_block(Alphabet const& a, Block const& b) {
      return render(a, std::span<Cell const>(b));
    }

    inline Report verdict_report(Verdict const& v, Alphabet const& a) {
      Report r;
      r.set({"verdict"}, std::string(tag_name(tag_of(v))));
      if (auto* c = std::get_if<ConjugateCertified>(&v)) {
        r.set({"stage"}, c->stage);
        r.set({"shift"}, c->shift);
        r.set({"outright"}, c->outright);
        std::vector<std::string> pairs;
        for (auto const& [s, t] : c->witness.pairs) {
          pairs.push_back(render_block(a, s) + " -> " + render_block(a, t));
        }
        r.set({"witness"}, pairs);
      } else if (auto* n = std::get_if<NotConjugateCertified>(&v)) {
        r.set({"reason"}, n->reason);
        r.set({"scale_a"}, n->scale_a.to_string());
        r.set({"scale_b"}, n->scale_b.to_string());
      } else if (auto* f = std::get_if<RefutedUpTo>(&v)) {
        r.set({"radius"}, f->radius);
        r.set({"stage"}, f->stage);
        r.set({"stages"}, f->stages_examined);
      } else {
        r.set({"diagnostics"}, std::get<VerdictUnknown>(v).diagnostics);
      }
      return r;
    }

    inline Report invariant_report(InvariantReport const& inv) {
      Report r;
      r.set({"summary"}, std::string(summary_name(inv.summary)));
      r.set({"scale_a"}, inv.scale_a.to_string());
      r.set({"scale_b"}, inv.scale_b.to_string());
      if (inv.scale_mismatch) {
        r.set({"reason"}, "scale");
        return r;
      }
      r.set({"factorization"}, inv.factorization);
      r.set({"equal_suffix"}, inv.equal_suffix);
      for (std::size_t i = 0; i < inv.stages.size(); ++i) {
        auto const& s = inv.stages[i];
        auto const  k = std::to_string(i);
        r.set({"stage", k, "period"}, s.period);
        r.set({"stage", k, "outcome"}, std::string(outcome_name(s.outcome)));
        if (s.outcome == StageOutcome::NotEvaluable) {
          continue;
        }
        r.set({"stage", k, "chi_a"}, s.chi_a);
        r.set({"stage", k, "chi_b"}, s.chi_b);
        r.set({"stage", k, "min_block_a"}, optional_json(s.min_block_a));
        r.set({"stage", k, "min_block_b"}, optional_json(s.min_block_b));
        r.set({"stage", k, "trusted_radius"}, optional_json(s.trusted_radius));
      }
      return r;
    }

    inline int invariant_exit(InvariantSummary s) {
      switch (s) {
        case InvariantSummary::EquivalentSuffix:
          return 0;
        case InvariantSummary::NotEquivalent:
          return 1;
        case InvariantSummary::Undetermined:
          return 2;
      }
      return 2;
    }

    //! Pairwise verdict matrix; rows and columns follow file names, whatever
    //! the order of `files`.
    inline Report corpus_report(std::vector<std::filesystem::path> files,
                                std::int64_t                       max_radius) {
      std::sort(files.begin(), files.end(), [](auto const& a, auto const& b) {
        return a.filename().string() < b.filename().string();
      });
      std::vector<SkeletonTower> towers;
      std::vector<std::string>   names;
      for (auto const& f : files) {
        towers.push_back(load_tower(f));
        names.push_back(f.filename().string());
      }
      Report r;
      r.set({"files"}, names);
      for (std::size_t i = 0; i < towers.size(); ++i) {
        for (std::size_t j = 0; j < towers.size(); ++j) {
          std::string tag;
          if (!(towers[i].alphabet() == towers[j].alphabet())) {
            tag = "alphabet-mismatch";
          } else {
            tag = tag_name(
                tag_of(conjugacy_verdict(towers[i], towers[j], max_radius)));
          }
          r.set({"matrix", names[i], names[j]}, tag);
        }
      }
      return r;
    }

    inline std::vector<std::filesystem::path> tower_files(
        std::filesystem::path const& dir) {
      if (!std::filesystem::is_directory(dir)) {
        throw IoError(dir.string() + " is not a directory");
      }
      std::vector<std::filesystem::path> out;
      for (auto const& e : std::filesystem::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".tw") {
          out.push_back(e.path());
        }
      }
      return out;
    }

  }  // namespace cli

  //! Runs one command line (without the program name).
  inline int run_command(std::vector<std::string> const& args,
                         std::ostream&                   out,
                         std::ostream&                   err) {
    CLI::App app{"Finite-stage computation on Toeplitz skeleton towers",
                 "toeplitz"};
    app.require_subcommand(1);
    std::string format = "text";
    auto add_format = [&](CLI::App* sub) {
      sub->add_option("--format", format, "text or json")
          ->check(CLI::IsMember({"text", "json"}));
    };

    std::string file_a, file_b, output, scale_text, code_file, perms_text,
        dir;
    std::optional<std::size_t> report_depth;
    std::size_t                count = 4, stages = 4;
    std::int64_t               max_radius = 2, k_stages = 3, period = 0,
                 shift = 0;

    auto* validate = app.add_subcommand("validate", "check a tower file");
    validate->add_option("file", file_a)->required();
    add_format(validate);

    auto* analyze = app.add_subcommand("analyze", "periodicity report");
    analyze->add_option("file", file_a)->required();
    analyze->add_option("--report-depth", report_depth,
                        "number of declared periods to report");
    add_format(analyze);

    auto* factor = app.add_subcommand("factor", "natural factorization");
    factor->add_option("--scale", scale_text)->required();
    factor->add_option("--count", count);
    add_format(factor);

    auto* compare = app.add_subcommand("compare", "conjugacy verdict");
    compare->add_option("a", file_a)->required();
    compare->add_option("b", file_b)->required();
    compare->add_option("--max-radius", max_radius)
        ->check(CLI::NonNegativeNumber);
    add_format(compare);

    auto* invariant = app.add_subcommand("invariant", "stage-wise chi table");
    invariant->add_option("a", file_a)->required();
    invariant->add_option("b", file_b)->required();
    invariant->add_option("--stages", stages)->required();
    add_format(invariant);

    auto* generate = app.add_subcommand("generate", "example towers");
    generate->require_subcommand(1);
    auto* doubling = generate->add_subcommand("paper-example",
                                              "the doubling example");
    doubling->add_option("--stages", k_stages)->check(CLI::NonNegativeNumber);
    doubling->add_option("-o,--output", output);

    auto* apply = app.add_subcommand("apply-code", "apply a block code");
    apply->add_option("file", file_a)->required();
    apply->add_option("--code", code_file)->required();
    apply->add_option("-o,--output", output);

    auto* permute = app.add_subcommand("permute",
                                       "apply a positionwise permutation");
    permute->add_option("file", file_a)->required();
    permute->add_option("--period", period)->required();
    permute->add_option("--perms", perms_text)->required();
    permute->add_option("-o,--output", output);

    auto* rotate = app.add_subcommand("rotate", "shift a tower");
    rotate->add_option("file", file_a)->required();
    rotate->add_option("-k", shift)->required();
    rotate->add_option("-o,--output", output);

    auto* corpus = app.add_subcommand("corpus", "pairwise verdict matrix");
    corpus->add_option("dir", dir)->required();
    corpus->add_option("--max-radius", max_radius)
        ->check(CLI::NonNegativeNumber);
    add_format(corpus);

    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return 0;
    } catch (CLI::ParseError const& e) {
      err << "usage error: " << e.what() << '\n';
      return cli::kExitUsage;
    }

    auto emit = [&](Report const& r) {
      if (format == "json") {
        out << r.to_json().dump(2) << '\n';
      } else {
        out << r.to_text();
      }
    };
    auto emit_tower = [&](SkeletonTower const& t) {
      auto text = serialize_tower(t);
      if (output.empty()) {
        out << text;
      } else {
        cli::write_file(output, text);
        out << "written = " << output << '\n';
      }
    };

    try {
      if (validate->parsed()) {
        auto   t = cli::load_tower(file_a);
        Report r;
        r.set({"valid"}, true);
        r.set({"periods"}, t.periods());
        r.set({"deepest"}, t.deepest_period());
        emit(r);
        return 0;
      }
      if (analyze->parsed()) {
        emit(cli::analyze_report(cli::load_tower(file_a), report_depth));
        return 0;
      }
      if (factor->parsed()) {
        SupernaturalNumber u;
        try {
          u = SupernaturalNumber::parse(scale_text);
        } catch (ParseError const& e) {
          throw ParseError(e.line, e.column, "--scale: " + e.message);
        }
        Report r;
        r.set({"scale"}, u.to_string());
        r.set({"factorization"}, natural_factorization(u, count));
        emit(r);
        return 0;
      }
      if (compare->parsed()) {
        auto a = cli::load_tower(file_a);
        auto b = cli::load_tower(file_b);
        auto v = conjugacy_verdict(a, b, max_radius);
        emit(cli::verdict_report(v, a.alphabet()));
        return exit_code(tag_of(v));
      }
      if (invariant->parsed()) {
        auto inv = invariant_compare(cli::load_tower(file_a),
                                     cli::load_tower(file_b), stages);
        emit(cli::invariant_report(inv));
        return cli::invariant_exit(inv.summary);
      }
      if (doubling->parsed()) {
        emit_tower(generate_paper_example(k_stages));
        return 0;
      }
      if (apply->parsed()) {
        auto t = cli::load_tower(file_a);
        auto c = parse_code_table(t.alphabet(), cli::read_file(code_file));
        emit_tower(apply_block_code(t, c));
        return 0;
      }
      if (permute->parsed()) {
        auto t   = cli::load_tower(file_a);
        auto phi = parse_perms(t.alphabet(), perms_text);
        if (phi.period() != period) {
          err << "usage error: --perms has " << phi.period()
              << " entries but --period is " << period << '\n';
          return cli::kExitUsage;
        }
        emit_tower(apply_positionwise_permutation(t, phi));
        return 0;
      }
      if (rotate->parsed()) {
        emit_tower(rotate_tower(cli::load_tower(file_a), shift));
        return 0;
      }
      if (corpus->parsed()) {
        emit(cli::corpus_report(cli::tower_files(dir), max_radius));
        return 0;
      }
    } catch (ParseError const& e) {
      err << "parse error: " << e.what() << '\n';
      return cli::kExitParse;
    } catch (cli::IoError const& e) {
      err << "i/o error: " << e.what() << '\n';
      return cli::kExitParse;
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
      return cli::kExitDomain;
    }
    return cli::kExitUsage;
  }

}  // namespace toeplitz
