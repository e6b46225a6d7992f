#pragma once

#include <climits>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "walshmeans/step_function.hpp"
#include "walshmeans/subsequence.hpp"

namespace walshmeans {

/// Relative guard used by every level comparison "value > lambda": the
/// comparison is value > lambda (1 + 1e-12), so exact ties do not count and
/// rounding noise cannot flip a tie.
inline constexpr double kLevelGuard = 1e-12;

bool exceeds_level(double value, double lambda) noexcept;

/// Absolute tolerance 1e-9 scaled by the largest magnitude involved.
double scaled_tolerance(double magnitude) noexcept;

/// Per-cell value of nu_lambda = inf{m : E_m|f| > lambda}; kNever encodes +inf.
struct StoppingProfile {
  static constexpr int kNever = INT_MAX;

  double lambda;
  int resolution;
  std::vector<int> nu;

  bool never_stops(std::size_t cell) const { return nu[cell] == kNever; }
  /// 1_{nu > i} as a step function; A_i-measurable.
  StepFunction survives(int i) const;
};

StoppingProfile stopping_time(const StepFunction& f, double lambda);

/// sigma_N f = (1/N) sum_{n<=N} S_{a(n)} f. Requires a(N) <= 2^M.
StepFunction sigma_mean(const StepFunction& f, const Subsequence& a, std::size_t count);

/// Running sigma_1 f, sigma_2 f, ...; each step costs one partial sum.
class SigmaSweep {
 public:
  SigmaSweep(const StepFunction& f, const Subsequence& a);

  /// Advances to the next N and returns sigma_N f.
  const StepFunction& advance();
  std::size_t count() const noexcept { return count_; }

 private:
  const Subsequence* sequence_;
  Spectrum spectrum_;
  std::vector<double> running_;
  StepFunction current_;
  std::size_t count_ = 0;
};

struct SigmaParts {
  StepFunction sigma0;       // (1/N) sum E_{A(n)+1} f
  StepFunction rho;          // (1/N) sum w_{a(n)} E_{m(a(n))}(f w_{a(n)})
  StepFunction sigma_tilde;  // (1/N) sum S~_{a(n)} f
  double residual;           // sup |sigma_N f - (sigma0 - rho + sigma_tilde)|
  double domination_excess;  // max(|sigma0| + |rho| - 2 f*), <= 0 when dominated
};

/// Requires A(N)+1 <= M.
SigmaParts sigma_parts(const StepFunction& f, const Subsequence& a, std::size_t count);

/// Finite-horizon max_{1<=N<=N_max} |sigma_N f|.
StepFunction maximal_sigma(const StepFunction& f, const Subsequence& a, std::size_t n_max);

/// Finite-horizon max_{1<=N<=N_max} |sigma~_N f|. Requires A(N_max)+1 <= M.
StepFunction block_mean_max(const StepFunction& f, const Subsequence& a, std::size_t n_max);

/// X for index value a(n) = `frequency` together with its structural checks.
struct StoppedBlockSum {
  StepFunction value;
  std::vector<double> term_norms_squared;  // ||1_{nu>i} (f*d_{a(n),i})||_2^2 for lambda = 1 terms
  double shell_leakage;        // max |X^(k)| for k outside [2^A, 2^{A+1})
  double coarse_residual;      // ||E_A X||_inf
  double pythagoras_residual;  // | ||X||^2 - sum term norms | / max(1, sum)
};

/// Requires |frequency|+1 <= M; nu must be computed at f's resolution.
StoppedBlockSum stopped_block_terms(const StepFunction& f, const StoppingProfile& nu, std::uint64_t frequency);

/// X_n = sum_i 1_{nu>i} (f * d_{a(n),i}). Throws InvariantError if X_n has
/// spectrum outside its dyadic shell or nonzero E_{A(n)} X_n (tol 1e-9 scaled).
StepFunction stopped_block_sum(const StepFunction& f, const Subsequence& a, std::size_t n, double lambda);

/// X_1 .. X_count (entry n-1 holds X_n), with the shell checks of stopped_block_sum.
std::vector<StepFunction> stopped_block_sums(const StepFunction& f, const Subsequence& a, double lambda,
                                             std::size_t count);

/// sum_i ||1_{nu>i} (f*d_{a(n),i})||^2 / (lambda ||f||_1).
double stopped_square_ratio(const StepFunction& f, const Subsequence& a, std::size_t n, double lambda);

struct MartingaleReport {
  int m = 0;
  std::uint64_t residue = 0;
  std::size_t length = 0;                    // L_{m,b}
  std::vector<double> increment_norms_squared;
  double path_max_squared_l1 = 0.0;          // || max_t |M_t| ||_2^2
  double final_norm_squared = 0.0;           // ||M_L||_2^2
  double doob_ratio = 0.0;
  double orthogonality_residual = 0.0;       // | ||M_L||^2 - sum ||X||^2 | / max(1, sum)
  bool adapted = true;                       // exponents strictly increase, increments in their shells
};

/// Martingale statistics for given increments with dyadic exponents k_s.
MartingaleReport martingale_report(int m, std::uint64_t residue, const std::vector<const StepFunction*>& increments,
                                   const std::vector<int>& exponents);

/// M_{b,t} = sum_{s<=t} X_{n_{b,s}} along residue class b of tail shell m.
MartingaleReport martingale_suite(const StepFunction& f, const Subsequence& a, double delta, double lambda, int m,
                                  std::uint64_t residue);

/// Every residue class of tail shell m from precomputed X_1.. (entry n-1 is
/// X_n, at least 2^{m+1}-1 entries).
std::vector<MartingaleReport> shell_martingales(const std::vector<StepFunction>& x, const Subsequence& a, double delta,
                                                int m);

/// Finite-horizon T*_lambda f = max_{N<=N_max} |(1/N) sum_{n<=N} X_n|.
StepFunction stopped_mean_max(const StepFunction& f, const Subsequence& a, double lambda, std::size_t n_max);

struct ShellDiagnostics {
  double a_m_l1;
  double b_m_star_l1;
  double reference;  // 2^{-m(1-delta)} lambda ||f||_1
};

ShellDiagnostics shell_diagnostics(const StepFunction& f, const Subsequence& a, double delta, double lambda, int m);

/// Same, from precomputed X_1.. (entry n-1 is X_n, at least 2^{m+1}-1 entries).
ShellDiagnostics shell_diagnostics_from(const std::vector<StepFunction>& x, double delta, double lambda,
                                        double f_l1, int m);

struct WeakTypeRow {
  double lambda;
  double measure;  // |{g > lambda}|, exact count of cells / 2^M
  double ratio;    // lambda * measure / ||f||_1
};

double level_set_measure(const StepFunction& g, double lambda);

std::vector<WeakTypeRow> weak_type_scan(const StepFunction& g, double norm_f, const std::vector<double>& lambdas);

/// Supremum of ratio over the rows (0 for an all-zero scan).
double empirical_constant(const std::vector<WeakTypeRow>& rows);

/// count points geometrically spaced from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, std::size_t count);

}  // namespace walshmeans
