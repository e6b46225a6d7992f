#include "walshmeans/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "walshmeans/corpus.hpp"
#include "walshmeans/errors.hpp"
#include "walshmeans/io.hpp"
#include "walshmeans/means_maximal.hpp"
#include "walshmeans/verify.hpp"
#include "walshmeans/walsh.hpp"

#ifndef WALSHMEANS_VERSION
#define WALSHMEANS_VERSION "0.0.0"
#endif

namespace walshmeans {

namespace {

std::string num(double x) { return format_cell(Cell{x}); }

std::uint64_t cells(int resolution) { return std::uint64_t{1} << resolution; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Report start_report(const ExperimentConfig& config, std::vector<std::string> columns) {
  Report r;
  r.command = config.command;
  r.columns = std::move(columns);
  r.metadata.emplace_back("version", library_version());
  r.metadata.emplace_back("config_hash", config.hash());
  r.metadata.emplace_back("config", config.canonical());
  r.metadata.emplace_back("timestamp", utc_timestamp());
  return r;
}

SequenceParams params_of(const ExperimentConfig& c) {
  SequenceParams p;
  p.delta = c.delta;
  p.a1 = c.a1;
  p.ratio = c.ratio;
  p.degree = c.degree;
  return p;
}

std::string sequence_label(const ExperimentConfig& c) {
  if (!is_generator_name(c.sequence)) return "file:" + c.sequence;
  return c.sequence;
}

}  // namespace

std::string library_version() { return WALSHMEANS_VERSION; }

bool is_generator_name(const std::string& sequence) {
  return sequence == "minimal_growth" || sequence == "lacunary" || sequence == "polynomial";
}

bool is_function_file(const std::string& function) {
  return function.size() > 5 && function.compare(function.size() - 5, 5, ".json") == 0;
}

void ExperimentConfig::validate() const {
  static const std::vector<std::string> commands = {"verify", "converge", "weaktype", "gen-seq"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end()) {
    throw ConfigError("unknown command '" + command + "'");
  }
  if (resolution) {
    if (*resolution < 1 || *resolution > max_resolution()) {
      throw ConfigError("resolution " + std::to_string(*resolution) + " outside [1, " +
                        std::to_string(max_resolution()) + "]");
    }
    if (command == "verify" && *resolution < 4) throw ConfigError("verify needs resolution >= 4");
  }
  if (is_generator_name(sequence)) {
    if (sequence == "minimal_growth" && !(delta > 0.0 && delta <= 1.0)) {
      throw ConfigError("delta must lie in (0, 1] for minimal_growth");
    }
    if (sequence != "polynomial" && a1 < 1) throw ConfigError("a1 must be >= 1");
    if (sequence == "lacunary" && !(ratio > 1.0 && std::isfinite(ratio))) {
      throw ConfigError("lacunary ratio must be > 1");
    }
    if (sequence == "polynomial" && (degree < 1 || degree > 62)) throw ConfigError("degree must lie in [1, 62]");
  } else if (sequence.empty()) {
    throw ConfigError("empty sequence spec");
  }
  if (n_max && *n_max < 1) throw ConfigError("n-max must be >= 1");
  if (!(lambda_min > 0.0) || !std::isfinite(lambda_min)) throw ConfigError("lambda-min must be positive");
  if (!(lambda_max >= lambda_min) || !std::isfinite(lambda_max)) {
    throw ConfigError("lambda-max must be finite and >= lambda-min");
  }
  if (lambda_count < 1) throw ConfigError("lambda-count must be >= 1");
  if (command == "gen-seq") {
    if (format != "seq" && format != "csv" && format != "json") {
      throw ConfigError("gen-seq format must be seq, csv or json");
    }
  } else {
    parse_report_format(format);
  }
  if (out.empty()) throw ConfigError("empty output path");
}

int ExperimentConfig::effective_resolution() const {
  if (resolution) return *resolution;
  return kDefaultResolution;
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream s;
  s << "command=" << command << ";resolution=" << effective_resolution() << ";sequence=" << sequence;
  if (is_generator_name(sequence)) {
    if (sequence == "minimal_growth") s << ";delta=" << num(delta) << ";a1=" << a1;
    if (sequence == "lacunary") s << ";a1=" << a1 << ";ratio=" << num(ratio);
    if (sequence == "polynomial") s << ";degree=" << degree;
  }
  // delta also drives the growth report and shell choice for any sequence
  if (sequence != "minimal_growth") s << ";delta=" << num(delta);
  s << ";n_max=" << (n_max ? std::to_string(*n_max) : "auto");
  if (command != "gen-seq") s << ";function=" << function;
  if (command == "weaktype") {
    s << ";lambda_min=" << num(lambda_min) << ";lambda_max=" << num(lambda_max) << ";lambda_count=" << lambda_count;
  }
  s << ";seed=" << seed;
  if (command == "converge") s << ";fejer_baseline=" << (fejer_baseline ? 1 : 0);
  if (command == "verify") {
    s << ";pow2_only=" << (pow2_only ? 1 : 0) << ";corrupt_kernel=" << (corrupt_kernel ? 1 : 0) << ";suites=";
    for (std::size_t k = 0; k < suites.size(); ++k) s << (k ? "," : "") << suites[k];
  }
  return s.str();
}

std::string ExperimentConfig::hash() const { return stable_hash(canonical()); }

Subsequence load_sequence(const ExperimentConfig& config) {
  if (!is_generator_name(config.sequence)) return load_sequence_file(config.sequence);
  const int M = config.effective_resolution();
  const SequenceKind kind = parse_sequence_kind(config.sequence);
  // a strictly increasing sequence from a(1) >= 1 passes 2^M by index 2^M
  std::size_t count = static_cast<std::size_t>(cells(M)) + 1;
  if (config.n_max) count = std::max(count, *config.n_max);
  try {
    return gen_sequence_until_limit(kind, params_of(config), count);
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
}

StepFunction load_function(const ExperimentConfig& config) {
  if (is_function_file(config.function)) {
    StepFunction f = load_step_function(config.function);
    if (config.resolution && *config.resolution != f.resolution()) {
      throw ConfigError("function file has resolution " + std::to_string(f.resolution()) + " but --resolution is " +
                        std::to_string(*config.resolution));
    }
    return f;
  }
  try {
    FunctionSpec spec = parse_function_spec(config.function);
    if (spec.name == "random_step") {
      const bool has_seed = std::any_of(spec.params.begin(), spec.params.end(),
                                        [](const auto& kv) { return kv.first == "seed"; });
      if (!has_seed) spec.params.emplace_back("seed", std::to_string(config.seed));
    }
    return builtin_function(spec, config.effective_resolution());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("function '") + config.function + "': " + e.what());
  }
}

std::size_t resolve_horizon(const ExperimentConfig& config, const Subsequence& a) {
  const int M = config.effective_resolution();
  const std::size_t largest = a.admissible_count(cells(M));
  if (largest == 0) {
    throw ConfigError("a(1) = " + std::to_string(a.at(1)) + " is not below 2^" + std::to_string(M) +
                      "; no admissible N");
  }
  if (!config.n_max) return largest;
  if (*config.n_max > largest) {
    throw ConfigError("n-max " + std::to_string(*config.n_max) + " needs a(N) < 2^" + std::to_string(M) +
                      "; largest admissible N is " + std::to_string(largest));
  }
  return *config.n_max;
}

std::vector<std::size_t> log_spaced_counts(std::size_t n_max) {
  std::vector<std::size_t> out;
  for (int t = 0;; ++t) {
    const auto n = static_cast<std::size_t>(std::llround(std::exp2(t / 4.0)));
    if (n > n_max) break;
    if (out.empty() || out.back() != n) out.push_back(n);
  }
  if (out.empty() || out.back() != n_max) out.push_back(n_max);
  return out;
}

double q90_abs(const StepFunction& g) {
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::abs(g[j]);
  const std::size_t rank = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(v.size())));
  const auto nth = v.begin() + static_cast<std::ptrdiff_t>(std::max<std::size_t>(rank, 1) - 1);
  std::nth_element(v.begin(), nth, v.end());
  return *nth;
}

CommandOutcome cmd_verify(const ExperimentConfig& config) {
  config.validate();
  VerifyOptions o;
  o.resolution = config.effective_resolution();
  o.seed = config.seed;
  o.pow2_only = config.pow2_only;
  o.corrupt_kernel = config.corrupt_kernel;
  o.only = config.suites;

  CommandOutcome out{start_report(config, {"config_hash", "suite_name", "instances_checked", "max_residual", "pass"}), false, {}};
  const std::string h = config.hash();
  for (const SuiteResult& r : run_verify(o)) {
    out.report.add_row({h, r.name, static_cast<std::int64_t>(r.instances), r.max_residual, r.pass});
    if (!r.pass) {
      out.verification_failed = true;
      for (const auto& f : r.failures) out.failures.push_back(r.name + ": " + f);
    }
  }
  out.report.sort_rows({1});
  out.report.metadata.emplace_back("suites", static_cast<std::int64_t>(out.report.rows.size()));
  return out;
}

CommandOutcome cmd_converge(const ExperimentConfig& config) {
  config.validate();
  const StepFunction f = load_function(config);
  ExperimentConfig effective = config;
  effective.resolution = f.resolution();
  const Subsequence a = load_sequence(effective);
  const std::size_t n_max = resolve_horizon(effective, a);
  const int M = f.resolution();

  CommandOutcome out{start_report(effective, {"config_hash", "sequence", "N", "a_N", "l1_error", "sup_error", "q90_error"}), false, {}};
  const std::string h = effective.hash();
  auto sweep = [&](const Subsequence& seq, std::size_t horizon, const std::string& label) {
    for (std::size_t n : log_spaced_counts(horizon)) {
      const StepFunction err = sigma_mean(f, seq, n) - f;
      out.report.add_row({h, label, static_cast<std::int64_t>(n), static_cast<std::int64_t>(seq.at(n)),
                          err.l1_norm(), err.sup_norm(), q90_abs(err)});
    }
  };
  sweep(a, n_max, sequence_label(effective));
  out.report.metadata.emplace_back("n_max", static_cast<std::int64_t>(n_max));
  out.report.metadata.emplace_back("horizon", "finite: N <= n_max with a(N) < 2^" + std::to_string(M));
  if (const auto bad = check_growth(a, config.delta)) {
    out.report.metadata.emplace_back("growth_violation_at", static_cast<std::int64_t>(*bad));
  } else {
    out.report.metadata.emplace_back("growth_violation_at", "none");
  }
  if (config.fejer_baseline) {
    const std::size_t size = static_cast<std::size_t>(cells(M)) - 1;
    std::vector<std::uint64_t> ids(size);
    for (std::size_t n = 0; n < size; ++n) ids[n] = n + 1;
    const Subsequence identity(SequenceKind::explicit_values, std::nullopt, std::move(ids));
    sweep(identity, size, "fejer_baseline");
  }
  out.report.sort_rows({1, 2});
  return out;
}

CommandOutcome cmd_weaktype(const ExperimentConfig& config) {
  config.validate();
  const StepFunction f = load_function(config);
  ExperimentConfig effective = config;
  effective.resolution = f.resolution();
  const Subsequence a = load_sequence(effective);
  const std::size_t n_max = resolve_horizon(effective, a);
  const int M = f.resolution();
  const double norm = f.l1_norm();
  if (!(norm > 0.0)) throw ConfigError("weaktype needs a function with positive L1 norm");
  // T* needs A(N)+1 <= M
  const std::size_t t_horizon = std::min(n_max, a.admissible_count(cells(M - 1)));
  const auto grid = geometric_grid(config.lambda_min, config.lambda_max, config.lambda_count);

  CommandOutcome out{start_report(
      effective, {"config_hash", "row_kind", "operator", "lambda", "level_set_measure", "ratio"}), false, {}};
  const std::string h = effective.hash();
  auto record = [&](const std::string& op, const std::vector<WeakTypeRow>& rows) {
    const WeakTypeRow* best = nullptr;
    for (const auto& r : rows) {
      out.report.add_row({h, "scan", op, r.lambda, r.measure, r.ratio});
      if (!best || r.ratio > best->ratio) best = &r;
    }
    out.report.add_row({h, "summary", op, best->lambda, best->measure, best->ratio});
  };

  record("dyadic_maximal", weak_type_scan(dyadic_maximal(f), norm, grid));
  record("maximal_sigma", weak_type_scan(maximal_sigma(f, a, n_max), norm, grid));
  std::vector<WeakTypeRow> t_rows;
  for (double lambda : grid) {
    if (t_horizon == 0) {
      t_rows.push_back({lambda, 0.0, 0.0});
      continue;
    }
    const auto row = weak_type_scan(stopped_mean_max(f, a, lambda, t_horizon), norm, {lambda});
    t_rows.push_back(row.front());
  }
  record("stopped_mean_max", t_rows);

  out.report.sort_rows({1, 2, 3});
  out.report.metadata.emplace_back("n_max", static_cast<std::int64_t>(n_max));
  out.report.metadata.emplace_back("stopped_n_max", static_cast<std::int64_t>(t_horizon));
  out.report.metadata.emplace_back("horizon", "finite: sup over N <= n_max; T* uses a(N) < 2^" + std::to_string(M - 1));
  return out;
}

Subsequence cmd_gen_seq(const ExperimentConfig& config) {
  config.validate();
  if (!is_generator_name(config.sequence)) throw ConfigError("gen-seq needs a generator name, not a file");
  const SequenceKind kind = parse_sequence_kind(config.sequence);
  try {
    if (config.n_max) return gen_sequence(kind, params_of(config), *config.n_max);
  } catch (const GenerationError& e) {
    throw ConfigError(std::string(e.what()) + "; largest valid n is " + std::to_string(e.largest_valid_n()));
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  const Subsequence a = load_sequence(config);
  const std::size_t horizon = a.admissible_count(cells(config.effective_resolution()));
  if (horizon == 0) throw ConfigError("a(1) is not below 2^" + std::to_string(config.effective_resolution()));
  std::vector<std::uint64_t> values(a.values().begin(), a.values().begin() + static_cast<std::ptrdiff_t>(horizon));
  return Subsequence(a.kind(), a.delta(), std::move(values));
}

}  // namespace walshmeans
