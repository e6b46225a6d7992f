#include "walshmeans/means_maximal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "walshmeans/errors.hpp"
#include "walshmeans/kernel_decomposition.hpp"
#include "walshmeans/walsh.hpp"

namespace walshmeans {

namespace {

std::uint64_t cell_count(int resolution) { return std::uint64_t{1} << resolution; }

void require_count(const Subsequence& a, std::size_t count) {
  if (count < 1 || count > a.size()) {
    throw ArgumentError("N = " + std::to_string(count) + " outside [1, " + std::to_string(a.size()) + "]");
  }
}

// a(N) <= 2^M, so every S_{a(n)} f is defined at resolution M.
void require_partial_sums_fit(const Subsequence& a, std::size_t count, int resolution) {
  require_count(a, count);
  if (a.at(count) > cell_count(resolution)) {
    const std::size_t largest = a.admissible_count(cell_count(resolution) + 1);
    throw ResolutionError("a(" + std::to_string(count) + ") = " + std::to_string(a.at(count)) + " exceeds 2^" +
                          std::to_string(resolution) + "; largest admissible N is " + std::to_string(largest));
  }
}

// A(N) + 1 <= M, so D_{2^{A(n)+1}} and all blocks B(a(n), i) fit.
void require_blocks_fit(const Subsequence& a, std::size_t count, int resolution) {
  require_count(a, count);
  if (a.exponent(count) + 1 > resolution) {
    const std::size_t largest = a.admissible_count(cell_count(resolution));
    throw ResolutionError("A(" + std::to_string(count) + ") + 1 = " + std::to_string(a.exponent(count) + 1) +
                          " exceeds resolution " + std::to_string(resolution) + "; largest admissible N is " +
                          std::to_string(largest));
  }
}

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ArgumentError("lambda must be a positive real");
}

StepFunction block_partial_sum(const StepFunction& f, std::uint64_t frequency) {
  StepFunction sum = StepFunction::zero(f.resolution());
  const BitProfile p = bit_profile(frequency);
  for (int i = p.bottom; i < p.top; ++i) {
    if (lambda_coeff(frequency, i) == 1) sum += block_convolve(f, frequency, i);
  }
  return sum;
}

void update_abs_max(std::vector<double>& best, const StepFunction& g, double scale) {
  for (std::size_t j = 0; j < best.size(); ++j) best[j] = std::max(best[j], std::abs(g[j] * scale));
}

void check_block_sum(const StoppedBlockSum& x, double magnitude, std::uint64_t frequency) {
  const double tol = scaled_tolerance(magnitude);
  if (x.shell_leakage > tol) {
    throw InvariantError("X for a(n) = " + std::to_string(frequency) + " leaks outside its dyadic shell by " +
                         std::to_string(x.shell_leakage));
  }
  if (x.coarse_residual > tol) {
    throw InvariantError("X for a(n) = " + std::to_string(frequency) + " has E_A X of size " +
                         std::to_string(x.coarse_residual));
  }
}

}  // namespace

bool exceeds_level(double value, double lambda) noexcept { return value > lambda * (1.0 + kLevelGuard); }

double scaled_tolerance(double magnitude) noexcept { return 1e-9 * std::max(1.0, std::abs(magnitude)); }

StepFunction StoppingProfile::survives(int i) const {
  std::vector<double> v(nu.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = nu[j] > i ? 1.0 : 0.0;
  return StepFunction(resolution, std::move(v));
}

StoppingProfile stopping_time(const StepFunction& f, double lambda) {
  require_lambda(lambda);
  const int M = f.resolution();
  const auto levels = abs_average_pyramid(f);
  std::vector<int> nu{exceeds_level(levels[0][0], lambda) ? 0 : StoppingProfile::kNever};
  for (int m = 1; m <= M; ++m) {
    std::vector<int> next(levels[m].size());
    for (std::size_t j = 0; j < next.size(); ++j) {
      const int parent = nu[j >> 1];
      next[j] = parent != StoppingProfile::kNever ? parent
                : exceeds_level(levels[m][j], lambda) ? m
                                                      : StoppingProfile::kNever;
    }
    nu = std::move(next);
  }
  return StoppingProfile{lambda, M, std::move(nu)};
}

StepFunction sigma_mean(const StepFunction& f, const Subsequence& a, std::size_t count) {
  const int M = f.resolution();
  require_partial_sums_fit(a, count, M);
  const Spectrum s = analyze(f);
  // coefficient k keeps the fraction #{n <= N : a(n) > k} / N
  std::vector<double> c(s.size(), 0.0);
  const double inv = 1.0 / static_cast<double>(count);
  std::size_t below = 0;  // #{n <= N : a(n) <= k}
  for (std::uint64_t k = 0; k < c.size(); ++k) {
    while (below < count && a.at(below + 1) <= k) ++below;
    if (below == count) break;
    c[k] = s[k] * (static_cast<double>(count - below) * inv);
  }
  return synthesize(Spectrum(M, std::move(c)));
}

SigmaSweep::SigmaSweep(const StepFunction& f, const Subsequence& a)
    : sequence_(&a), spectrum_(analyze(f)), running_(f.size(), 0.0), current_(StepFunction::zero(f.resolution())) {}

const StepFunction& SigmaSweep::advance() {
  const int M = spectrum_.resolution();
  const std::size_t n = count_ + 1;
  require_partial_sums_fit(*sequence_, n, M);
  const std::uint64_t cut = sequence_->at(n);
  std::vector<double> c(spectrum_.size(), 0.0);
  std::copy_n(spectrum_.coeffs().begin(), cut, c.begin());
  const StepFunction partial = synthesize(Spectrum(M, std::move(c)));
  for (std::size_t j = 0; j < running_.size(); ++j) running_[j] += partial[j];
  count_ = n;
  std::vector<double> mean(running_.size());
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < mean.size(); ++j) mean[j] = running_[j] * inv;
  current_ = StepFunction(M, std::move(mean));
  return current_;
}

SigmaParts sigma_parts(const StepFunction& f, const Subsequence& a, std::size_t count) {
  const int M = f.resolution();
  require_blocks_fit(a, count, M);
  const double inv = 1.0 / static_cast<double>(count);

  std::vector<std::size_t> per_level(M + 1, 0);
  StepFunction rho = StepFunction::zero(M);
  StepFunction tilde = StepFunction::zero(M);
  for (std::size_t n = 1; n <= count; ++n) {
    const std::uint64_t an = a.at(n);
    const BitProfile p = bit_profile(an);
    ++per_level[p.top + 1];
    rho += character_projection(f, an, p.bottom);
    tilde += block_partial_sum(f, an);
  }
  StepFunction sigma0 = StepFunction::zero(M);
  for (int level = 0; level <= M; ++level) {
    if (per_level[level] > 0) sigma0 += cond_expect(f, level) * static_cast<double>(per_level[level]);
  }
  sigma0 *= inv;
  rho *= inv;
  tilde *= inv;

  const StepFunction assembled = sigma0 - rho + tilde;
  const double residual = sup_distance(sigma_mean(f, a, count), assembled);
  const StepFunction fstar = dyadic_maximal(f);
  double excess = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < f.size(); ++j) {
    excess = std::max(excess, std::abs(sigma0[j]) + std::abs(rho[j]) - 2.0 * fstar[j]);
  }
  return SigmaParts{std::move(sigma0), std::move(rho), std::move(tilde), residual, excess};
}

StepFunction maximal_sigma(const StepFunction& f, const Subsequence& a, std::size_t n_max) {
  require_partial_sums_fit(a, n_max, f.resolution());
  SigmaSweep sweep(f, a);
  std::vector<double> best(f.size(), 0.0);
  for (std::size_t n = 1; n <= n_max; ++n) update_abs_max(best, sweep.advance(), 1.0);
  return StepFunction(f.resolution(), std::move(best));
}

StepFunction block_mean_max(const StepFunction& f, const Subsequence& a, std::size_t n_max) {
  require_blocks_fit(a, n_max, f.resolution());
  StepFunction running = StepFunction::zero(f.resolution());
  std::vector<double> best(f.size(), 0.0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    running += block_partial_sum(f, a.at(n));
    update_abs_max(best, running, 1.0 / static_cast<double>(n));
  }
  return StepFunction(f.resolution(), std::move(best));
}

StoppedBlockSum stopped_block_terms(const StepFunction& f, const StoppingProfile& nu, std::uint64_t frequency) {
  const int M = f.resolution();
  if (nu.resolution != M) throw ArgumentError("stopping profile resolution differs from f");
  const BitProfile p = bit_profile(frequency);
  if (p.top + 1 > M) {
    throw ResolutionError("a(n) = " + std::to_string(frequency) + " needs resolution >= " + std::to_string(p.top + 1));
  }
  StoppedBlockSum out{StepFunction::zero(M), {}, 0.0, 0.0, 0.0};
  for (int i = p.bottom; i < p.top; ++i) {
    if (lambda_coeff(frequency, i) == 0) continue;
    StepFunction term = block_convolve(f, frequency, i) * nu.survives(i);
    out.term_norms_squared.push_back(term.l2_norm_squared());
    out.value += term;
  }
  const Spectrum s = analyze(out.value);
  out.shell_leakage = spectrum_leakage(s, std::uint64_t{1} << p.top, std::uint64_t{1} << (p.top + 1));
  out.coarse_residual = cond_expect(out.value, p.top).sup_norm();
  const double sum = pairwise_sum(out.term_norms_squared);
  out.pythagoras_residual = std::abs(out.value.l2_norm_squared() - sum) / std::max(1.0, sum);
  return out;
}

StepFunction stopped_block_sum(const StepFunction& f, const Subsequence& a, std::size_t n, double lambda) {
  require_blocks_fit(a, n, f.resolution());
  StoppedBlockSum x = stopped_block_terms(f, stopping_time(f, lambda), a.at(n));
  check_block_sum(x, f.sup_norm(), a.at(n));
  return std::move(x.value);
}

std::vector<StepFunction> stopped_block_sums(const StepFunction& f, const Subsequence& a, double lambda,
                                             std::size_t count) {
  require_blocks_fit(a, count, f.resolution());
  const StoppingProfile nu = stopping_time(f, lambda);
  std::vector<StepFunction> xs;
  xs.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) {
    StoppedBlockSum x = stopped_block_terms(f, nu, a.at(n));
    check_block_sum(x, f.sup_norm(), a.at(n));
    xs.push_back(std::move(x.value));
  }
  return xs;
}

double stopped_square_ratio(const StepFunction& f, const Subsequence& a, std::size_t n, double lambda) {
  require_lambda(lambda);
  const double l1 = f.l1_norm();
  if (!(l1 > 0.0)) throw ArgumentError("stopped_square_ratio: f must have positive L1 norm");
  require_blocks_fit(a, n, f.resolution());
  const StoppedBlockSum x = stopped_block_terms(f, stopping_time(f, lambda), a.at(n));
  if (x.pythagoras_residual > 1e-9) {
    throw InvariantError("stopped block terms are not orthogonal: residual " + std::to_string(x.pythagoras_residual));
  }
  return pairwise_sum(x.term_norms_squared) / (lambda * l1);
}

MartingaleReport martingale_report(int m, std::uint64_t residue, const std::vector<const StepFunction*>& increments,
                                   const std::vector<int>& exponents) {
  if (increments.size() != exponents.size()) throw ArgumentError("martingale_report: size mismatch");
  MartingaleReport r;
  r.m = m;
  r.residue = residue;
  r.length = increments.size();
  if (increments.empty()) return r;

  const int M = increments.front()->resolution();
  std::vector<double> path(increments.front()->size(), 0.0);
  std::vector<double> max_abs(path.size(), 0.0);
  for (std::size_t s = 0; s < increments.size(); ++s) {
    const StepFunction& x = *increments[s];
    const int k = exponents[s];
    if (s > 0 && k <= exponents[s - 1]) r.adapted = false;
    if (k + 1 > M) {
      r.adapted = false;
    } else {
      const double leak = spectrum_leakage(analyze(x), std::uint64_t{1} << k, std::uint64_t{1} << (k + 1));
      if (leak > scaled_tolerance(x.sup_norm())) r.adapted = false;
    }
    r.increment_norms_squared.push_back(x.l2_norm_squared());
    for (std::size_t j = 0; j < path.size(); ++j) {
      path[j] += x[j];
      max_abs[j] = std::max(max_abs[j], std::abs(path[j]));
    }
  }
  const StepFunction final_value(M, std::move(path));
  const StepFunction max_path(M, std::move(max_abs));
  r.final_norm_squared = final_value.l2_norm_squared();
  r.path_max_squared_l1 = max_path.l2_norm_squared();
  r.doob_ratio = r.final_norm_squared > 0.0 ? r.path_max_squared_l1 / r.final_norm_squared : 0.0;
  const double sum = pairwise_sum(r.increment_norms_squared);
  r.orthogonality_residual = std::abs(r.final_norm_squared - sum) / std::max(1.0, sum);
  return r;
}

MartingaleReport martingale_suite(const StepFunction& f, const Subsequence& a, double delta, double lambda, int m,
                                  std::uint64_t residue) {
  require_lambda(lambda);
  const ShellPartition part = shell_partition(a, delta, m);
  if (residue >= part.step) {
    throw ArgumentError("residue " + std::to_string(residue) + " outside [0, R_m = " + std::to_string(part.step) + ")");
  }
  const ResidueClass& cls = part.classes[residue];
  if (cls.indices.empty()) return martingale_report(m, residue, {}, {});
  require_blocks_fit(a, cls.indices.back(), f.resolution());

  const StoppingProfile nu = stopping_time(f, lambda);
  std::vector<StepFunction> xs;
  xs.reserve(cls.indices.size());
  for (std::size_t n : cls.indices) xs.push_back(stopped_block_terms(f, nu, a.at(n)).value);
  std::vector<const StepFunction*> ptrs;
  for (const auto& x : xs) ptrs.push_back(&x);
  return martingale_report(m, residue, ptrs, cls.exponents);
}

std::vector<MartingaleReport> shell_martingales(const std::vector<StepFunction>& x, const Subsequence& a, double delta,
                                                int m) {
  const ShellPartition part = shell_partition(a, delta, m);
  const std::size_t last = (std::size_t{1} << (m + 1)) - 1;
  if (x.size() < last) throw ArgumentError("shell_martingales: needs X_1..X_" + std::to_string(last));
  std::vector<MartingaleReport> out;
  out.reserve(part.classes.size());
  for (const ResidueClass& cls : part.classes) {
    std::vector<const StepFunction*> ptrs;
    for (std::size_t n : cls.indices) ptrs.push_back(&x[n - 1]);
    out.push_back(martingale_report(m, cls.residue, ptrs, cls.exponents));
  }
  return out;
}

StepFunction stopped_mean_max(const StepFunction& f, const Subsequence& a, double lambda, std::size_t n_max) {
  require_blocks_fit(a, n_max, f.resolution());
  const StoppingProfile nu = stopping_time(f, lambda);
  StepFunction running = StepFunction::zero(f.resolution());
  std::vector<double> best(f.size(), 0.0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    running += stopped_block_terms(f, nu, a.at(n)).value;
    update_abs_max(best, running, 1.0 / static_cast<double>(n));
  }
  return StepFunction(f.resolution(), std::move(best));
}

ShellDiagnostics shell_diagnostics(const StepFunction& f, const Subsequence& a, double delta, double lambda,
                                   int m) {
  if (m < 0 || m > 30) throw ArgumentError("shell_diagnostics: shell index outside [0, 30]");
  const std::size_t last = (std::size_t{1} << (m + 1)) - 1;
  const auto xs = stopped_block_sums(f, a, lambda, last);
  return shell_diagnostics_from(xs, delta, lambda, f.l1_norm(), m);
}

ShellDiagnostics shell_diagnostics_from(const std::vector<StepFunction>& x, double delta, double lambda, double f_l1,
                                        int m) {
  require_lambda(lambda);
  const std::size_t head_end = std::size_t{1} << m;
  const std::size_t last = (std::size_t{1} << (m + 1)) - 1;
  if (x.size() < last) throw ArgumentError("shell_diagnostics: needs X_1..X_" + std::to_string(last));
  const int M = x.front().resolution();
  const double weight = std::ldexp(2.0, -2 * m);

  StepFunction head = StepFunction::zero(M);
  for (std::size_t n = 1; n <= head_end; ++n) head += x[n - 1];
  std::vector<double> a_m(head.size());
  for (std::size_t j = 0; j < a_m.size(); ++j) a_m[j] = weight * head[j] * head[j];

  // B_{m,N} for N = 2^m is the empty sum
  StepFunction tail = StepFunction::zero(M);
  std::vector<double> b_star(head.size(), 0.0);
  for (std::size_t n = head_end + 1; n <= last; ++n) {
    tail += x[n - 1];
    for (std::size_t j = 0; j < b_star.size(); ++j) b_star[j] = std::max(b_star[j], weight * tail[j] * tail[j]);
  }
  const double reference = std::exp2(-static_cast<double>(m) * (1.0 - delta)) * lambda * f_l1;
  return ShellDiagnostics{StepFunction(M, std::move(a_m)).integral(), StepFunction(M, std::move(b_star)).integral(),
                          reference};
}

double level_set_measure(const StepFunction& g, double lambda) {
  std::size_t hits = 0;
  for (double v : g.values()) hits += exceeds_level(v, lambda) ? 1 : 0;
  return std::ldexp(static_cast<double>(hits), -g.resolution());
}

std::vector<WeakTypeRow> weak_type_scan(const StepFunction& g, double norm_f, const std::vector<double>& lambdas) {
  if (!(norm_f > 0.0)) throw ArgumentError("weak_type_scan: ||f||_1 must be positive");
  if (lambdas.empty()) throw ArgumentError("weak_type_scan: empty lambda grid");
  std::vector<WeakTypeRow> rows;
  rows.reserve(lambdas.size());
  for (double lambda : lambdas) {
    require_lambda(lambda);
    const double measure = level_set_measure(g, lambda);
    rows.push_back({lambda, measure, lambda * measure / norm_f});
  }
  return rows;
}

double empirical_constant(const std::vector<WeakTypeRow>& rows) {
  double c = 0.0;
  for (const auto& r : rows) c = std::max(c, r.ratio);
  return c;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) throw ArgumentError("geometric_grid: need 0 < lo <= hi, count >= 1");
  if (count == 1) return {lo};
  const double a = std::log2(lo);
  const double b = std::log2(hi);
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::exp2(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace walshmeans
