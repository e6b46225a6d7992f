// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "walshmeans/corpus.hpp"
#include "walshmeans/experiments.hpp"
#include "walshmeans/means_maximal.hpp"
#include "walshmeans/subsequence.hpp"
#include "walshmeans/verify.hpp"
#include "walshmeans/walsh.hpp"

using namespace walshmeans;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Subsequence minimal(double delta) {
  SequenceParams p;
  p.delta = delta;
  return gen_sequence_until_limit(SequenceKind::minimal_growth, p, std::size_t{1} << 21);
}

// Runs the named suites and folds them into one outcome.
Outcome suites(const std::vector<std::string>& names, const VerifyOptions& o) {
  Outcome out;
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, o);
    out.pass = out.pass && r.pass;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += name + " " + std::to_string(r.instances) + " instances, max residual " + fmt(r.max_residual);
    if (!r.failures.empty()) out.detail += ", first failure: " + r.failures.front();
  }
  return out;
}

VerifyOptions at(int M) {
  VerifyOptions o;
  o.resolution = M;
  return o;
}

Outcome kernel_decomposition() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out = suites({"kernel_decomposition", "dirichlet_standard_identity"}, at(13));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > 120.0) out.pass = false;
  out.detail += "; " + fmt(secs) + " s of 120";
  return out;
}

Outcome stopped_sums() {
  VerifyOptions o = at(12);
  o.stopped_lambda_count = 33;
  return suites({"stopped_sums"}, o);
}

Outcome doob() {
  // shells m <= 6 whose indices n < 2^{m+1} keep a(n) < 2^{19}; each delta runs at
  // the smallest resolution admitting them
  const int M_cap = 20;
  Outcome out;
  double worst = 0.0;
  std::size_t reports = 0, longest = 0;
  std::string reach;
  for (double delta : {0.3, 0.5, 0.7, 0.9}) {
    const Subsequence a = minimal(delta);
    const std::size_t horizon = a.admissible_count(std::uint64_t{1} << (M_cap - 1));
    int m_top = -1;
    while (m_top < 6 && (std::size_t{1} << (m_top + 2)) - 1 <= horizon) ++m_top;
    const std::size_t last = (std::size_t{1} << (m_top + 1)) - 1;
    const int M = std::max(12, a.exponent(last) + 2);
    reach += " delta=" + fmt(delta) + ":m<=" + std::to_string(m_top) + "@M=" + std::to_string(M);
    const std::vector<std::string> specs{"spike:6", "random_step:seed=1,level=12", "sawtooth"};
    for (const auto& spec : specs) {
      const StepFunction f = builtin_function(spec, M);
      for (double lambda : {0.5, 4.0}) {
        const auto xs = stopped_block_sums(f, a, lambda, last);
        for (int m = 0; m <= m_top; ++m) {
          for (const MartingaleReport& r : shell_martingales(xs, a, delta, m)) {
            ++reports;
            worst = std::max(worst, r.doob_ratio);
            longest = std::max(longest, r.length);
            if (!(r.doob_ratio <= 4.0 + 1e-9) || !r.adapted) out.pass = false;
          }
        }
      }
    }
  }
  out.detail = std::to_string(reports) + " shell reports," + reach + "; max ratio " + fmt(worst) +
               ", longest class " + std::to_string(longest);
  const Outcome strands = suites({"doob_martingale"}, at(13));
  out.pass = out.pass && strands.pass;
  out.detail += "; " + strands.detail;
  return out;
}

Outcome convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  for (const std::string& fn : {std::string("spike:6"), std::string("random_step")}) {
    ExperimentConfig c;
    c.command = "converge";
    c.resolution = 20;
    c.delta = 0.9;
    c.function = fn;
    const Report r = cmd_converge(c).report;
    const auto col = [&](const std::string& name) {
      return static_cast<std::size_t>(std::find(r.columns.begin(), r.columns.end(), name) - r.columns.begin());
    };
    double at4 = -1.0, at_last = -1.0;
    std::int64_t last_n = 0;
    for (const auto& row : r.rows) {
      const auto n = std::get<std::int64_t>(row[col("N")]);
      const double e = std::get<double>(row[col("l1_error")]);
      if (n == 4) at4 = e;
      if (n >= last_n) {
        last_n = n;
        at_last = e;
      }
    }
    const bool ok = at4 > 0.0 && at_last <= 0.5 * at4;
    out.pass = out.pass && ok;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += fn + " N=4 " + fmt(at4) + " -> N=" + std::to_string(last_n) + " " + fmt(at_last);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > 300.0) out.pass = false;
  out.detail += "; " + fmt(secs) + " s of 300";
  return out;
}

bool same_ratio(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({std::abs(a), std::abs(b), 1e-300}); }

Outcome weak_type() {
  const int M = 12;
  const Subsequence a = minimal(0.9);
  const std::size_t n_max = a.admissible_count(std::uint64_t{1} << M);
  const std::size_t t_max = a.admissible_count(std::uint64_t{1} << (M - 1));
  const auto grid = geometric_grid(1.0 / 256, 256.0, 33);
  Outcome out;
  double c_star = 0.0, c_sigma = 0.0, c_t = 0.0;
  bool invariant = true;
  for (const auto& [name, f0] : standard_corpus(M, 1)) {
    std::vector<double> base;
    for (double c : {1.0, 0.125, 10.0}) {
      const StepFunction f = c * f0;
      const double norm = f.l1_norm();
      std::vector<double> lam(grid);
      for (double& l : lam) l *= c;
      std::vector<double> ratios;
      for (const auto& r : weak_type_scan(dyadic_maximal(f), norm, lam)) ratios.push_back(r.ratio);
      const double star = *std::max_element(ratios.begin(), ratios.end());
      for (const auto& r : weak_type_scan(maximal_sigma(f, a, n_max), norm, lam)) ratios.push_back(r.ratio);
      for (double l : lam) ratios.push_back(weak_type_scan(stopped_mean_max(f, a, l, t_max), norm, {l}).front().ratio);
      for (double r : ratios) {
        if (!std::isfinite(r)) out.pass = false;
      }
      if (c == 1.0) {
        base = ratios;
        c_star = std::max(c_star, star);
        c_sigma = std::max(c_sigma, *std::max_element(ratios.begin() + 33, ratios.begin() + 66));
        c_t = std::max(c_t, *std::max_element(ratios.begin() + 66, ratios.end()));
        if (star > 4.0) out.pass = false;
      } else {
        for (std::size_t i = 0; i < ratios.size(); ++i) invariant = invariant && same_ratio(ratios[i], base[i]);
      }
    }
  }
  out.pass = out.pass && invariant;
  out.detail = "f* constant " + fmt(c_star) + " (bound 4), M sigma constant " + fmt(c_sigma) + ", T* constant " +
               fmt(c_t) + ", scaling c in {1/8, 10} " + (invariant ? "invariant" : "NOT invariant");
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"kernel decomposition, all n < 2^12 at M=13", kernel_decomposition},
      {"block combinatorics, all n < 2^14", [] { return suites({"block_combinatorics"}, at(13)); }},
      {"spectrum stability, 1000 random instances", [] { return suites({"spectrum_stability"}, at(12)); }},
      {"stopped sums over corpus x delta x lambda grid", stopped_sums},
      {"Doob ratio <= 4 on shells m <= 6", doob},
      {"shell lacunarity and step bound", [] { return suites({"shell_lacunarity", "shell_step_bound"}, at(13)); }},
      {"sigma splitting and domination", [] { return suites({"sigma_splitting_domination"}, at(13)); }},
      {"Fejer and polynomial reductions",
       [] { return suites({"fejer_reduction", "polynomial_fixed_point"}, at(13)); }},
      {"L1 error halves by the horizon at M=20", convergence},
      {"weak-type scans and scaling invariance", weak_type},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %zu: %s %s [%s] (%.1f s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
