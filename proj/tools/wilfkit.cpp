#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "wilfkit/cache.hpp"
#include "wilfkit/classify.hpp"
#include "wilfkit/enumerate.hpp"
#include "wilfkit/verify.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitRefused = 3;

int ceiling_for(wilfkit::SetKind kind) {
  switch (kind) {
    case wilfkit::SetKind::S: return 12;
    case wilfkit::SetKind::B: return 8;
    case wilfkit::SetKind::I: return 14;
    case wilfkit::SetKind::SI: return 11;
  }
  return 0;
}

std::vector<wilfkit::SignedPerm> read_pattern_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wilfkit::ParseError("cannot open pattern file '" + path + "'");
  std::vector<wilfkit::SignedPerm> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    out.push_back(wilfkit::parse_pattern(line));
  }
  return out;
}

std::unique_ptr<wilfkit::CountCache> open_cache(const std::string& flag_dir) {
  std::string dir = flag_dir;
  if (dir.empty())
    if (const char* env = std::getenv("WILFKIT_CACHE_DIR")) dir = env;
  if (dir.empty()) return nullptr;
  return std::make_unique<wilfkit::CountCache>(dir);
}

std::string fixed_point_set(uint32_t mask) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) {
      if (!first) out += ' ';
      out += std::to_string(i + 1);
      first = false;
    }
  return out + "}";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signed pattern avoidance toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the global flags after the subcommand name too

  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string cache_dir;
  bool force = false;
  app.add_option("--threads", threads, "worker threads")->capture_default_str();
  app.add_option("--cache-dir", cache_dir, "count cache directory (or WILFKIT_CACHE_DIR)");
  app.add_flag("--force", force, "ignore the per-set n ceilings");

  auto* cmd_count = app.add_subcommand("count", "count pattern-avoiding elements");
  std::string set_name, pattern_text, patterns_file;
  int count_n = 0;
  bool refine = false;
  cmd_count->add_option("--set", set_name, "ground set: S, B, I or SI")->required();
  cmd_count->add_option("--n", count_n, "element size")->required();
  cmd_count->add_option("--pattern", pattern_text, "pattern word, e.g. \"1 2 -3\"");
  cmd_count->add_option("--patterns", patterns_file, "file with one pattern per line, # comments");
  cmd_count->add_flag("--refine-fixed-points", refine,
                      "report counts per fixed-point set (I and SI only)");

  auto* cmd_classify = app.add_subcommand("classify", "compute equivalence classes");
  std::string universe_name, mode_name = "iwilf", out_path, format = "csv";
  int max_n = 0;
  cmd_classify->add_option("--universe", universe_name, "S5, S6, S7 or B5")->required();
  cmd_classify->add_option("--mode", mode_name, "wilf or iwilf")->capture_default_str();
  cmd_classify->add_option("--max-n", max_n, "largest n for count signatures")->required();
  cmd_classify->add_option("--out", out_path, "report file (stdout when omitted)");
  cmd_classify->add_option("--format", format, "csv or json")->capture_default_str();

  auto* cmd_verify = app.add_subcommand("verify", "run a bijection property suite");
  std::string check, chi1_text, chi2_text, sigma_text, tau_text;
  int max_cells = 8, verify_max_n = 5;
  cmd_verify->add_option("--check", check, "barring, prop1, thm1, thm2 or shape-wilf")->required();
  cmd_verify->add_option("--max-cells", max_cells, "largest shape size")->capture_default_str();
  cmd_verify->add_option("--max-n", verify_max_n, "largest involution size")->capture_default_str();
  cmd_verify->add_option("--chi1", chi1_text, "left pattern for shape-wilf");
  cmd_verify->add_option("--chi2", chi2_text, "right pattern for shape-wilf");
  cmd_verify->add_option("--sigma", sigma_text, "source pattern for thm1/thm2");
  cmd_verify->add_option("--tau", tau_text, "target pattern for thm1/thm2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    auto cache = open_cache(cache_dir);

    if (cmd_count->parsed()) {
      wilfkit::SetKind kind = wilfkit::parse_set_kind(set_name);
      if (count_n < 0) throw wilfkit::ParseError("--n must be nonnegative");
      if (!force && count_n > ceiling_for(kind)) {
        std::cerr << "refusing n=" << count_n << " for set " << set_name << " (ceiling "
                  << ceiling_for(kind) << "); pass --force to override\n";
        return kExitRefused;
      }
      std::vector<wilfkit::SignedPerm> patterns;
      if (!pattern_text.empty()) patterns.push_back(wilfkit::parse_pattern(pattern_text));
      if (!patterns_file.empty()) {
        auto more = read_pattern_file(patterns_file);
        patterns.insert(patterns.end(), more.begin(), more.end());
      }
      if (patterns.empty()) throw wilfkit::ParseError("no pattern given");
      wilfkit::GroundSet set{kind, count_n};
      if (refine) {
        auto table = wilfkit::count_avoiders_refined(set, patterns, threads);
        for (const auto& [mask, count] : table)
          std::cout << "fixed-points " << fixed_point_set(mask) << ": " << count << '\n';
        return 0;
      }
      uint64_t count;
      if (patterns.size() == 1) {
        auto sig = wilfkit::signature(kind, patterns.front(), count_n, count_n, threads,
                                      cache.get());
        count = sig.counts.at(count_n);
      } else {
        count = wilfkit::count_avoiders(set, patterns, threads);
      }
      std::cout << count << '\n';
      return 0;
    }

    if (cmd_classify->parsed()) {
      wilfkit::Universe u;
      if (universe_name == "S5") u = {5, false};
      else if (universe_name == "S6") u = {6, false};
      else if (universe_name == "S7") u = {7, false};
      else if (universe_name == "B5") u = {5, true};
      else throw wilfkit::ParseError("unknown universe '" + universe_name + "'");
      wilfkit::EquivKind kind = wilfkit::parse_equiv_kind(mode_name);
      wilfkit::SetKind set = kind == wilfkit::EquivKind::wilf
                                 ? (u.with_signs ? wilfkit::SetKind::B : wilfkit::SetKind::S)
                                 : (u.with_signs ? wilfkit::SetKind::SI : wilfkit::SetKind::I);
      if (!force && max_n > ceiling_for(set)) {
        std::cerr << "refusing max-n=" << max_n << " for counting set "
                  << wilfkit::set_kind_name(set) << " (ceiling " << ceiling_for(set)
                  << "); pass --force to override\n";
        return kExitRefused;
      }
      auto report = wilfkit::classify(u, kind, max_n, threads, cache.get());
      std::string doc = format == "json" ? wilfkit::emit_json(report) : wilfkit::emit_csv(report);
      if (format != "json" && format != "csv")
        throw wilfkit::ParseError("unknown format '" + format + "'");
      if (out_path.empty()) {
        std::cout << doc;
      } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        out << doc;
      }
      std::cout << "classes: " << report.classes.size()
                << ", unseparated-pairs: " << report.unseparated.size() << '\n';
      return 0;
    }

    if (cmd_verify->parsed()) {
      std::vector<wilfkit::VerifyResult> results;
      auto mat = [](const std::string& text) {
        return wilfkit::to_matrix(wilfkit::parse_pattern(text));
      };
      const bool has_chis = !chi1_text.empty() && !chi2_text.empty();
      const bool has_pair = !sigma_text.empty() && !tau_text.empty();
      if (check == "barring") results = wilfkit::verify_barring(max_cells);
      else if (check == "prop1") results = wilfkit::verify_prop1(max_cells);
      else if (check == "shape-wilf")
        results = has_chis ? wilfkit::verify_shape_wilf_pair(mat(chi1_text), mat(chi2_text),
                                                             max_cells)
                           : wilfkit::verify_shape_wilf(max_cells);
      else if (check == "thm1")
        results = has_pair
                      ? wilfkit::verify_thm1_pair(mat(sigma_text), mat(tau_text), verify_max_n)
                      : wilfkit::verify_thm1(verify_max_n);
      else if (check == "thm2")
        results = has_pair
                      ? wilfkit::verify_thm2_pair(mat(sigma_text), mat(tau_text), verify_max_n)
                      : wilfkit::verify_thm2(verify_max_n);
      else throw wilfkit::ParseError("unknown check '" + check + "'");
      std::cout << wilfkit::render_results(results);
      return wilfkit::all_pass(results) ? 0 : kExitFailure;
    }
  } catch (const wilfkit::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
