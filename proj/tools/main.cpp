#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "walshmeans/errors.hpp"
#include "walshmeans/experiments.hpp"
#include "walshmeans/io.hpp"
#include "walshmeans/report.hpp"

namespace wm = walshmeans;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 2, kConfig = 3, kIo = 4 };

void add_common(CLI::App& sub, wm::ExperimentConfig& c, int& resolution) {
  sub.add_option("--resolution", resolution, "rank M of the dyadic grid (2^M cells)");
  sub.add_option("--seed", c.seed, "seed for random builtins and randomized suites");
  sub.add_option("--out", c.out, "output path, - for stdout");
  sub.add_option("--format", c.format, "csv or json");
}

void add_sequence(CLI::App& sub, wm::ExperimentConfig& c, std::size_t& n_max) {
  sub.add_option("--sequence", c.sequence, "minimal_growth, lacunary, polynomial, or a sequence file");
  sub.add_option("--delta", c.delta, "growth exponent delta");
  sub.add_option("--a1", c.a1, "first term a(1)");
  sub.add_option("--ratio", c.ratio, "lacunary ratio q");
  sub.add_option("--degree", c.degree, "polynomial degree d");
  sub.add_option("--n-max", n_max, "horizon N_max (default: largest N with a(N) < 2^M)");
}

void emit_sequence(const wm::Subsequence& a, const wm::ExperimentConfig& c) {
  std::ostringstream body;
  if (c.format == "seq") {
    wm::write_sequence(body, a);
  } else {
    wm::Report r;
    r.command = "gen-seq";
    r.columns = {"config_hash", "n", "a_n"};
    r.metadata.emplace_back("config", c.canonical());
    const std::string h = c.hash();
    for (std::size_t n = 1; n <= a.size(); ++n) {
      r.add_row({h, static_cast<std::int64_t>(n), static_cast<std::int64_t>(a.at(n))});
    }
    wm::emit_report(r, wm::parse_report_format(c.format), c.out);
    return;
  }
  if (c.out == "-") {
    std::cout << body.str();
    if (!std::cout) throw wm::IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(c.out);
  if (!out) throw wm::IoError("cannot open '" + c.out + "' for writing");
  out << body.str();
  if (!out.flush()) throw wm::IoError("failed writing '" + c.out + "'");
}

bool given(const CLI::App* sub, const std::string& name) {
  const CLI::Option* o = sub->get_option_no_throw(name);
  return o != nullptr && o->count() > 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walsh-Fourier subsequence means: verification suites and experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", wm::library_version());

  wm::ExperimentConfig config;
  int resolution = 0;
  std::size_t n_max = 0;

  auto* verify = app.add_subcommand("verify", "run every invariant suite and report one row per suite");
  add_common(*verify, config, resolution);
  verify->add_flag("--pow2-only", config.pow2_only, "restrict kernel suites to n = 2^k");
  verify->add_option("--suite", config.suites, "run only the named suite (repeatable)");
  verify->add_flag("--corrupt-kernel", config.corrupt_kernel, "negative control: perturb the kernel assembly")
      ->group("");

  auto* converge = app.add_subcommand("converge", "errors of sigma_N f against f along a log-spaced N grid");
  add_common(*converge, config, resolution);
  add_sequence(*converge, config, n_max);
  converge->add_option("--function", config.function, "builtin spec (spike:6) or a .json step function");
  converge->add_flag("--fejer-baseline", config.fejer_baseline, "also sweep a(n) = n");

  auto* weaktype = app.add_subcommand("weaktype", "level-set scans for f*, M f and T*_lambda f");
  add_common(*weaktype, config, resolution);
  add_sequence(*weaktype, config, n_max);
  weaktype->add_option("--function", config.function, "builtin spec (spike:6) or a .json step function");
  weaktype->add_option("--lambda-min", config.lambda_min, "smallest level");
  weaktype->add_option("--lambda-max", config.lambda_max, "largest level");
  weaktype->add_option("--lambda-count", config.lambda_count, "number of geometric grid points");

  auto* gen = app.add_subcommand("gen-seq", "write a generated sequence");
  add_common(*gen, config, resolution);
  add_sequence(*gen, config, n_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  CLI::App* chosen = app.get_subcommands().front();
  config.command = chosen->get_name();
  if (given(chosen, "--resolution")) config.resolution = resolution;
  if (given(chosen, "--n-max")) config.n_max = n_max;
  if (config.command == "gen-seq" && !given(chosen, "--format")) config.format = "seq";

  try {
    config.validate();
    if (config.command == "gen-seq") {
      emit_sequence(wm::cmd_gen_seq(config), config);
      return kOk;
    }
    wm::CommandOutcome outcome;
    if (config.command == "verify") {
      outcome = wm::cmd_verify(config);
    } else if (config.command == "converge") {
      outcome = wm::cmd_converge(config);
    } else {
      outcome = wm::cmd_weaktype(config);
    }
    wm::emit_report(outcome.report, wm::parse_report_format(config.format), config.out);
    if (outcome.verification_failed) {
      for (const auto& line : outcome.failures) std::cerr << "FAIL " << line << '\n';
      return kVerifyFailed;
    }
    return kOk;
  } catch (const wm::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const wm::InvariantError& e) {
    std::cerr << "verification error: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const wm::GenerationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  }
}
