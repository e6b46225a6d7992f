#include "walshmeans/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "walshmeans/corpus.hpp"
#include "walshmeans/errors.hpp"
#include "walshmeans/kernel_decomposition.hpp"
#include "walshmeans/means_maximal.hpp"
#include "walshmeans/subsequence.hpp"
#include "walshmeans/walsh.hpp"

namespace walshmeans {

namespace {

constexpr std::size_t kMaxListedFailures = 8;

class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }

  // residual is compared against tol; the largest residual seen is reported
  void check(double residual, double tol, const std::function<std::string()>& describe) {
    ++r_.instances;
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    r_.max_residual = std::max(r_.max_residual, residual);
    if (residual > tol) fail(describe());
  }

  void check_exact(bool ok, const std::function<std::string()>& describe) {
    ++r_.instances;
    if (!ok) fail(describe());
  }

  void count(std::size_t n) { r_.instances += n; }

  void fail(const std::string& what) {
    r_.pass = false;
    if (r_.failures.size() < kMaxListedFailures) r_.failures.push_back(what);
  }

  SuiteResult take() { return std::move(r_); }

 private:
  SuiteResult r_;
};

std::string str(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

double unit_draw(std::mt19937_64& rng) { return std::ldexp(static_cast<double>(rng() >> 11), -53) * 2.0 - 1.0; }

StepFunction random_function(int resolution, std::mt19937_64& rng) {
  std::vector<double> v(std::size_t{1} << resolution);
  for (auto& x : v) x = unit_draw(rng);
  return StepFunction(resolution, std::move(v));
}

// constant on rank-i cells
StepFunction random_coarse(int resolution, int i, std::mt19937_64& rng) {
  std::vector<double> v(std::size_t{1} << resolution);
  const std::size_t run = std::size_t{1} << (resolution - i);
  for (std::size_t start = 0; start < v.size(); start += run) {
    std::fill_n(v.begin() + static_cast<std::ptrdiff_t>(start), run, unit_draw(rng));
  }
  return StepFunction(resolution, std::move(v));
}

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

std::vector<std::uint64_t> kernel_range(std::uint64_t end, bool pow2_only) {
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 1; n < end; n = pow2_only ? 2 * n : n + 1) ns.push_back(n);
  return ns;
}

Subsequence minimal(double delta) {
  SequenceParams p;
  p.delta = delta;
  return gen_sequence_until_limit(SequenceKind::minimal_growth, p, std::size_t{1} << 25);
}

// largest N with A(N)+1 <= M
std::size_t block_horizon(const Subsequence& a, int resolution) {
  return a.admissible_count(std::uint64_t{1} << (resolution - 1));
}

const std::vector<double> kDeltas = {0.1, 0.3, 0.5, 0.7, 0.9};

SuiteResult transform_naive(const VerifyOptions& o) {
  Tally t("transform_naive");
  for (int M = 0; M <= std::min(o.resolution, 8); ++M) {
    const std::size_t size = std::size_t{1} << M;
    for (std::size_t j = 0; j < size; ++j) {
      std::vector<double> e(size, 0.0);
      e[j] = 1.0;
      const Spectrum s = analyze(StepFunction(M, std::move(e)));
      double worst = 0.0;
      for (std::uint64_t k = 0; k < size; ++k) {
        // <e_j, w_k> = 2^-M w_k(cell j), with w_k from its digit product
        int sign = 1;
        for (int b = 0; b < M; ++b) {
          if (((k >> b) & 1u) && ((j >> (M - 1 - b)) & 1u)) sign = -sign;
        }
        worst = std::max(worst, std::abs(s[k] - std::ldexp(static_cast<double>(sign), -M)));
      }
      t.check(worst, 1e-15, [&] { return "M=" + std::to_string(M) + " basis cell " + std::to_string(j); });
    }
  }
  return t.take();
}

SuiteResult parseval_roundtrip(const VerifyOptions& o) {
  Tally t("parseval_roundtrip");
  std::mt19937_64 rng(o.seed);
  for (int M = 1; M <= std::min(o.resolution, 16); ++M) {
    for (int rep = 0; rep < 4; ++rep) {
      const StepFunction f = random_function(M, rng);
      const Spectrum s = analyze(f);
      std::vector<double> sq(s.size());
      for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = s[k] * s[k];
      const double norm = f.l2_norm_squared();
      t.check(std::abs(pairwise_sum(sq) - norm) / norm, 1e-10,
              [&] { return "Parseval at M=" + std::to_string(M); });
      t.check(sup_distance(synthesize(s), f), scaled_tolerance(f.sup_norm()),
              [&] { return "round trip at M=" + std::to_string(M); });
    }
  }
  return t.take();
}

SuiteResult walsh_multiplicative(const VerifyOptions& o) {
  Tally t("walsh_multiplicative");
  const int M = std::min(o.resolution, 8);
  const std::uint64_t size = std::uint64_t{1} << M;
  for (std::uint64_t a = 0; a < size; ++a) {
    for (std::uint64_t b = 0; b < size; ++b) {
      bool ok = true;
      for (std::uint64_t j = 0; j < size && ok; ++j) {
        ok = walsh_eval(a, j, M) * walsh_eval(b, j, M) == walsh_eval(dyadic_add(a, b, M), j, M);
      }
      t.check_exact(ok, [&] { return "a=" + std::to_string(a) + " b=" + std::to_string(b); });
    }
  }
  return t.take();
}

SuiteResult dirichlet_mass(const VerifyOptions& o) {
  Tally t("dirichlet_mass");
  const int M = std::min(o.resolution, 12);
  for (std::uint64_t n = 1; n <= (std::uint64_t{1} << M); ++n) {
    const StepFunction d = dirichlet_kernel(n, M);
    const double residual = std::max(std::abs(d.integral() - 1.0), std::abs(d[0] - static_cast<double>(n)));
    t.check(residual, scaled_tolerance(static_cast<double>(n)), [&] { return "n=" + std::to_string(n); });
  }
  return t.take();
}

SuiteResult semigroups(const VerifyOptions& o) {
  Tally t("semigroups");
  std::mt19937_64 rng(o.seed + 1);
  const int M = std::min(o.resolution, 10);
  const std::uint64_t top = std::uint64_t{1} << M;
  const StepFunction f = random_function(M, rng);
  for (int rep = 0; rep < 200; ++rep) {
    const std::uint64_t n = pick(rng, 0, top);
    const std::uint64_t k = pick(rng, 0, top);
    t.check(sup_distance(partial_sum(partial_sum(f, k), n), partial_sum(f, std::min(n, k))), 1e-9,
            [&] { return "S_" + std::to_string(n) + " S_" + std::to_string(k); });
  }
  for (int m = 0; m <= M; ++m) {
    t.check(sup_distance(cond_expect(f, m), partial_sum(f, std::uint64_t{1} << m)), 1e-9,
            [&] { return "E_" + std::to_string(m) + " vs S_2^m"; });
    for (int k = 0; k <= M; ++k) {
      t.check(sup_distance(cond_expect(cond_expect(f, k), m), cond_expect(f, std::min(m, k))), 1e-9,
              [&] { return "E_" + std::to_string(m) + " E_" + std::to_string(k); });
    }
  }
  return t.take();
}

SuiteResult dyadic_maximal_weak(const VerifyOptions& o) {
  Tally t("dyadic_maximal_weak");
  const auto grid = geometric_grid(std::exp2(-8.0), std::exp2(8.0), 33);
  for (const auto& [name, f] : standard_corpus(o.resolution, o.seed)) {
    const double c = empirical_constant(weak_type_scan(dyadic_maximal(f), f.l1_norm(), grid));
    t.check(c, 4.0, [&] { return name + " constant " + str(c); });
  }
  return t.take();
}

SuiteResult kernel_decomposition(const VerifyOptions& o) {
  Tally t("kernel_decomposition");
  const int M = o.resolution;
  for (std::uint64_t n : kernel_range(std::uint64_t{1} << (M - 1), o.pow2_only)) {
    const DirichletDecomposition d = decompose_dirichlet(n, M);
    double residual = d.residual_sup;
    if (o.corrupt_kernel && !d.parts.empty()) {
      StepFunction assembled = d.head - d.modulated_tail;
      for (std::size_t p = 0; p < d.parts.size(); ++p) {
        assembled += (p == 0 ? -1.0 : 1.0) * d.parts[p].second;
      }
      residual = sup_distance(dirichlet_kernel(n, M), assembled);
    }
    t.check(residual, 1e-9, [&] { return "n=" + std::to_string(n) + " residual " + str(residual); });
    if (o.pow2_only) {
      t.check_exact(d.parts.empty(), [&] { return "n=" + std::to_string(n) + " has d-parts"; });
    }
  }
  return t.take();
}

SuiteResult dirichlet_standard(const VerifyOptions& o) {
  Tally t("dirichlet_standard_identity");
  const int M = o.resolution;
  for (std::uint64_t n : kernel_range(std::uint64_t{1} << (M - 1), o.pow2_only)) {
    const double residual = dirichlet_standard_identity(n, M);
    t.check(residual, 1e-9, [&] { return "n=" + std::to_string(n) + " residual " + str(residual); });
  }
  return t.take();
}

SuiteResult d_kernel_closed_form(const VerifyOptions& o) {
  Tally t("d_kernel_closed_form");
  const int M = std::min(o.resolution, 11);
  for (std::uint64_t n : kernel_range(std::uint64_t{1} << (M - 1), o.pow2_only)) {
    const int top = bit_profile(n).top;
    for (int i = 0; i < top; ++i) {
      const DKernelForms forms = d_kernel_forms(n, i, M);
      t.check(sup_distance(forms.defining, forms.closed), 1e-9,
              [&] { return "n=" + std::to_string(n) + " i=" + std::to_string(i); });
    }
  }
  return t.take();
}

SuiteResult block_combinatorics(const VerifyOptions& o) {
  Tally t("block_combinatorics");
  const std::uint64_t end = std::uint64_t{1} << (o.resolution + 1);
  for (std::uint64_t n = 1; n < end; ++n) {
    const int top = std::bit_width(n) - 1;
    const int bottom = std::countr_zero(n);
    const std::vector<Block> bl = blocks(n);
    bool ok = true;
    std::size_t expected = 0;
    for (int i = bottom; i < top; ++i) expected += ((n >> i) & 1u) ? 0 : 1;
    ok = ok && bl.size() == expected;
    const std::uint64_t shell_lo = std::uint64_t{1} << top;
    for (std::size_t p = 0; p < bl.size() && ok; ++p) {
      const Block& b = bl[p];
      ok = b.hi_exclusive - b.lo == (std::uint64_t{1} << b.i) && ((n >> b.i) & 1u) == 0;
      ok = ok && b.lo >= shell_lo && b.hi_exclusive <= 2 * shell_lo;
      for (std::size_t q = p + 1; q < bl.size() && ok; ++q) ok = b.hi_exclusive - 1 < bl[q].lo;
    }
    t.check_exact(ok, [&] { return "n=" + std::to_string(n); });
  }
  return t.take();
}

SuiteResult spectrum_stability(const VerifyOptions& o) {
  Tally t("spectrum_stability");
  std::mt19937_64 rng(o.seed + 2);
  const int M = std::min(o.resolution, 12);
  if (M < 3) return t.take();
  std::size_t done = 0;
  while (done < 1000) {
    const std::uint64_t n = pick(rng, 1, (std::uint64_t{1} << (M - 1)) - 1);
    const int top = bit_profile(n).top;
    std::vector<int> admissible;
    for (int i = 0; i < top; ++i) {
      if (lambda_coeff(n, i) == 1) admissible.push_back(i);
    }
    if (admissible.empty()) continue;
    const int i = admissible[pick(rng, 0, admissible.size() - 1)];
    const Block b = block(n, i);
    const StepFunction phi = random_coarse(M, i, rng);
    std::vector<double> c(std::size_t{1} << M, 0.0);
    for (std::uint64_t k = b.lo; k < b.hi_exclusive; ++k) c[k] = unit_draw(rng);
    const StepFunction h = synthesize(Spectrum(M, std::move(c)));
    const double leak = spectrum_leakage(analyze(phi * h), b.lo, b.hi_exclusive);
    t.check(leak, 1e-10, [&] { return "n=" + std::to_string(n) + " i=" + std::to_string(i); });
    ++done;
  }
  return t.take();
}

SuiteResult partial_sum_splitting(const VerifyOptions& o) {
  Tally t("partial_sum_splitting");
  std::mt19937_64 rng(o.seed + 3);
  const int M = o.resolution;
  for (const auto& [name, f] : standard_corpus(M, o.seed)) {
    const double tol = scaled_tolerance(f.sup_norm());
    for (int rep = 0; rep < 24; ++rep) {
      const std::uint64_t n = pick(rng, 1, (std::uint64_t{1} << (M - 1)) - 1);
      const PartialSumParts p = decompose_partial_sum(f, n);
      t.check(sup_distance(partial_sum(f, n), p.coarse - p.modulated + p.block_sum), tol,
              [&] { return name + " n=" + std::to_string(n); });
    }
  }
  return t.take();
}


SuiteResult stopped_sums(const VerifyOptions& o) {
  Tally t("stopped_sums");
  const int M = o.resolution;
  const auto corpus = standard_corpus(M, o.seed);
  for (double delta : {0.3, 0.5, 0.9}) {
    const Subsequence a = minimal(delta);
    const std::size_t horizon = block_horizon(a, M);
    for (const auto& [name, f] : corpus) {
      const double tol = scaled_tolerance(f.sup_norm());
      for (double lambda : geometric_grid(std::exp2(-8.0), std::exp2(8.0), o.stopped_lambda_count)) {
        const StoppingProfile nu = stopping_time(f, lambda);
        for (std::size_t n = 1; n <= horizon; ++n) {
          const StoppedBlockSum x = stopped_block_terms(f, nu, a.at(n));
          auto where = [&] {
            return name + " delta=" + str(delta) + " lambda=" + str(lambda) + " n=" + std::to_string(n);
          };
          t.check(x.shell_leakage, tol, [&] { return where() + " shell leakage"; });
          t.check(x.coarse_residual, tol, [&] { return where() + " E_A X"; });
          t.check(x.pythagoras_residual, 1e-9, [&] { return where() + " Pythagoras"; });
        }
      }
    }
  }
  return t.take();
}

SuiteResult stopped_square_scaling(const VerifyOptions& o) {
  Tally t("stopped_square_scaling");
  const int M = o.resolution;
  const Subsequence a = minimal(0.5);
  const std::size_t horizon = block_horizon(a, M);
  for (const auto& [name, f] : standard_corpus(M, o.seed)) {
    for (double lambda : {0.25, 1.0, 4.0}) {
      const std::size_t stride = std::max<std::size_t>(1, horizon / 8);
      for (std::size_t n = std::max<std::size_t>(1, horizon / 2); n <= horizon; n += stride) {
        const double base = stopped_square_ratio(f, a, n, lambda);
        for (double c : {10.0, 0.125}) {
          const double scaled = stopped_square_ratio(c * f, a, n, c * lambda);
          // ratios of exact-zero sums are rounding noise near 1e-35; floor the denominator
          const double rel = std::abs(scaled - base) / std::max(std::abs(base), 1e-12);
          t.check(rel, 1e-9, [&] { return name + " n=" + std::to_string(n) + " c=" + str(c); });
        }
      }
    }
  }
  return t.take();
}

SuiteResult doob_martingale(const VerifyOptions& o) {
  Tally t("doob_martingale");
  const int M = o.resolution;
  const auto corpus = standard_corpus(M, o.seed);
  auto record = [&](const MartingaleReport& r, const std::string& where) {
    t.check(r.doob_ratio, 4.0 + 1e-9, [&] { return where + " doob ratio " + str(r.doob_ratio); });
    t.check_exact(r.adapted, [&] { return where + " not adapted"; });
    t.check(r.orthogonality_residual, 1e-9, [&] { return where + " increments not orthogonal"; });
  };
  for (double delta : {0.3, 0.5, 0.7, 0.9}) {
    const Subsequence a = minimal(delta);
    const std::size_t horizon = block_horizon(a, M);
    int m_top = -1;
    while (m_top < 6 && (std::size_t{1} << (m_top + 2)) - 1 <= horizon) ++m_top;
    if (m_top < 0) continue;
    const std::size_t last = (std::size_t{1} << (m_top + 1)) - 1;
    for (const auto& [name, f] : corpus) {
      for (double lambda : {0.5, 4.0}) {
        const auto xs = stopped_block_sums(f, a, lambda, last);
        for (int m = 0; m <= m_top; ++m) {
          for (const MartingaleReport& r : shell_martingales(xs, a, delta, m)) {
            record(r, name + " delta=" + str(delta) + " m=" + std::to_string(m) + " b=" + std::to_string(r.residue));
          }
        }
      }
    }
  }
  // shell classes at this scale hold at most a few terms; long lacunary strands
  // give martingales with up to M-2 increments
  for (int variant = 0; variant < 2; ++variant) {
    std::vector<std::uint64_t> values;
    for (int k = 2; k + 1 < M; ++k) {
      const std::uint64_t v = (std::uint64_t{1} << k) + (variant == 0 ? 1 : (std::uint64_t{1} << (k / 2)) + 1);
      values.push_back(v);
    }
    const Subsequence strand(SequenceKind::explicit_values, std::nullopt, values);
    for (const auto& [name, f] : corpus) {
      for (double lambda : {0.5, 4.0}) {
        const auto xs = stopped_block_sums(f, strand, lambda, strand.size());
        std::vector<const StepFunction*> ptrs;
        std::vector<int> exps;
        for (std::size_t n = 1; n <= strand.size(); ++n) {
          ptrs.push_back(&xs[n - 1]);
          exps.push_back(strand.exponent(n));
        }
        record(martingale_report(-1, 0, ptrs, exps), name + " strand " + std::to_string(variant));
      }
    }
  }
  return t.take();
}

SuiteResult shell_lacunarity(const VerifyOptions&) {
  Tally t("shell_lacunarity");
  for (double delta : kDeltas) {
    const Subsequence a = minimal(delta);
    int m_max = -1;
    while ((std::size_t{1} << (m_max + 2)) <= a.size()) ++m_max;
    const LacunarityReport rep = verify_shell_lacunarity(a, delta, m_max);
    t.count(rep.pairs_checked);
    for (const auto& fail : rep.failures) {
      t.fail("delta=" + str(delta) + " m=" + std::to_string(fail.m) + " beta=" + std::to_string(fail.beta));
    }
    for (int m = 0; m <= m_max; ++m) {
      const ShellPartition part = shell_partition(a, delta, m);
      for (const auto& cls : part.classes) {
        const bool increasing = std::adjacent_find(cls.exponents.begin(), cls.exponents.end(),
                                                   std::greater_equal<int>()) == cls.exponents.end();
        t.check_exact(increasing, [&] {
          return "delta=" + str(delta) + " m=" + std::to_string(m) + " b=" + std::to_string(cls.residue);
        });
      }
    }
  }
  return t.take();
}

SuiteResult shell_step_bound(const VerifyOptions&) {
  Tally t("shell_step_bound");
  for (double delta : kDeltas) {
    std::uint64_t prev = 0;
    for (int m = 0; m <= 40; ++m) {
      const ShellStep s = shell_step(delta, m);
      const long double u = std::exp2(-static_cast<long double>(m + 1) * delta);
      const long double power = std::exp(static_cast<long double>(s.step) * std::log1p(u));
      // margin >= 0 iff (1 + 2^{-(m+1) delta})^{R_m} >= 2
      t.check(static_cast<double>(2.0L - power), 0.0,
              [&] { return "delta=" + str(delta) + " m=" + std::to_string(m) + " power bound"; });
      const double scaled = static_cast<double>(s.step) / std::exp2(m * delta);
      t.check_exact(scaled >= s.kappa - 1e-12 && scaled < s.kappa + 1.0 + 1e-12 && s.step >= prev,
                    [&] { return "delta=" + str(delta) + " m=" + std::to_string(m) + " R_m range"; });
      prev = s.step;
    }
  }
  return t.take();
}

SuiteResult growth_generator(const VerifyOptions&) {
  Tally t("growth_generator");
  for (double delta : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
    SequenceParams p;
    p.delta = delta;
    for (std::uint64_t a1 : {1u, 3u, 100u}) {
      p.a1 = a1;
      const Subsequence a = gen_sequence_until_limit(SequenceKind::minimal_growth, p, 1u << 16);
      const auto bad = check_growth(a, delta);
      t.check_exact(!bad.has_value(), [&] { return "delta=" + str(delta) + " a1=" + std::to_string(a1); });
    }
  }
  SequenceParams sq;
  sq.degree = 2;
  const auto first = check_growth(gen_sequence(SequenceKind::polynomial, sq, 64), 0.5);
  t.check_exact(first == std::optional<std::size_t>(5), [] { return std::string("n^2 first violation not at n=5"); });
  return t.take();
}

SuiteResult sigma_splitting_domination(const VerifyOptions& o) {
  Tally t("sigma_splitting_domination");
  const int M = o.resolution;
  for (double delta : {0.5, 0.9}) {
    const Subsequence a = minimal(delta);
    const std::size_t horizon = block_horizon(a, M);
    std::vector<std::size_t> ns;
    for (std::size_t n = 1; n <= horizon; n *= 2) ns.push_back(n);
    if (ns.back() != horizon) ns.push_back(horizon);
    for (const auto& [name, f] : standard_corpus(M, o.seed)) {
      const double tol = scaled_tolerance(f.sup_norm());
      for (std::size_t n : ns) {
        const SigmaParts p = sigma_parts(f, a, n);
        auto where = [&] { return name + " delta=" + str(delta) + " N=" + std::to_string(n); };
        t.check(p.residual, tol, [&] { return where() + " splitting"; });
        t.check(p.domination_excess, 1e-9, [&] { return where() + " domination"; });
      }
    }
  }
  return t.take();
}

SuiteResult fejer_reduction(const VerifyOptions& o) {
  Tally t("fejer_reduction");
  const int M = std::min(o.resolution, 10);
  const std::uint64_t size = std::uint64_t{1} << M;
  std::vector<std::uint64_t> ids(size);
  for (std::uint64_t n = 0; n < size; ++n) ids[n] = n + 1;
  const Subsequence a(SequenceKind::explicit_values, std::nullopt, std::move(ids));
  for (const auto& [name, f] : standard_corpus(M, o.seed)) {
    for (std::uint64_t n = 1; n <= size; n = n < 40 ? n + 1 : n * 3 / 2) {
      const StepFunction fejer = dyadic_convolve(f, fejer_kernel(n, M));
      t.check(sup_distance(sigma_mean(f, a, n), fejer), 1e-10 * std::max(1.0, f.sup_norm()),
              [&] { return name + " N=" + std::to_string(n); });
    }
  }
  return t.take();
}

SuiteResult polynomial_fixed_point(const VerifyOptions& o) {
  Tally t("polynomial_fixed_point");
  std::mt19937_64 rng(o.seed + 4);
  const int M = o.resolution;
  const double dyadic[] = {-1.5, -1.0, -0.5, 0.25, 0.75, 1.0, 2.0};
  for (int L = 0; L + 2 <= M; ++L) {
    std::vector<double> c(std::size_t{1} << M, 0.0);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << L); ++k) c[k] = dyadic[pick(rng, 0, 6)];
    const StepFunction poly = synthesize(Spectrum(M, std::move(c)));
    SequenceParams p;
    p.delta = 0.5;
    p.a1 = std::uint64_t{1} << L;
    for (SequenceKind kind : {SequenceKind::minimal_growth, SequenceKind::lacunary}) {
      const Subsequence a = gen_sequence_until_limit(kind, p, 1u << 12);
      const std::size_t n_max = a.admissible_count((std::uint64_t{1} << M) + 1);
      for (std::size_t n = 1; n <= n_max; n = n * 2 + 1) {
        const double gap = sup_distance(sigma_mean(poly, a, n), poly);
        t.check(gap, 0.0, [&] {
          return "L=" + std::to_string(L) + " " + to_string(kind) + " N=" + std::to_string(n) + " gap " + str(gap);
        });
      }
    }
  }
  return t.take();
}

using SuiteFn = SuiteResult (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"transform_naive", transform_naive},
      {"parseval_roundtrip", parseval_roundtrip},
      {"walsh_multiplicative", walsh_multiplicative},
      {"dirichlet_mass", dirichlet_mass},
      {"semigroups", semigroups},
      {"dyadic_maximal_weak", dyadic_maximal_weak},
      {"kernel_decomposition", kernel_decomposition},
      {"dirichlet_standard_identity", dirichlet_standard},
      {"d_kernel_closed_form", d_kernel_closed_form},
      {"block_combinatorics", block_combinatorics},
      {"spectrum_stability", spectrum_stability},
      {"partial_sum_splitting", partial_sum_splitting},
      {"stopped_sums", stopped_sums},
      {"stopped_square_scaling", stopped_square_scaling},
      {"doob_martingale", doob_martingale},
      {"shell_lacunarity", shell_lacunarity},
      {"shell_step_bound", shell_step_bound},
      {"growth_generator", growth_generator},
      {"sigma_splitting_domination", sigma_splitting_domination},
      {"fejer_reduction", fejer_reduction},
      {"polynomial_fixed_point", polynomial_fixed_point},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& verify_manifest() {
  static const std::vector<std::string> names = {
      "transform_naive",       "parseval_roundtrip",     "walsh_multiplicative",
      "dirichlet_mass",        "semigroups",             "dyadic_maximal_weak",
      "kernel_decomposition",  "dirichlet_standard_identity", "d_kernel_closed_form",
      "block_combinatorics",   "spectrum_stability",     "partial_sum_splitting",
      "stopped_sums",          "stopped_square_scaling", "doob_martingale",
      "shell_lacunarity",      "shell_step_bound",       "growth_generator",
      "sigma_splitting_domination", "fejer_reduction",   "polynomial_fixed_point",
  };
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  if (options.resolution < 4) throw ConfigError("verify needs resolution >= 4");
  check_resolution(options.resolution);
  for (const auto& [key, fn] : registry()) {
    if (key == name) {
      try {
        return fn(options);
      } catch (const InvariantError& e) {
        SuiteResult r{name, 0, std::numeric_limits<double>::infinity(), false, {e.what()}};
        return r;
      }
    }
  }
  throw ConfigError("unknown verify suite '" + name + "'");
}

std::vector<SuiteResult> run_verify(const VerifyOptions& options) {
  const auto& manifest = verify_manifest();
  std::vector<std::string> wanted = options.only.empty() ? manifest : options.only;
  for (const auto& w : wanted) {
    if (std::find(manifest.begin(), manifest.end(), w) == manifest.end()) {
      throw ConfigError("unknown verify suite '" + w + "'");
    }
  }
  std::vector<SuiteResult> results;
  for (const auto& name : wanted) results.push_back(run_suite(name, options));
  if (results.size() != wanted.size()) throw InvariantError("verify ran fewer suites than requested");
  for (std::size_t k = 0; k < wanted.size(); ++k) {
    if (results[k].name != wanted[k]) throw InvariantError("verify suite '" + wanted[k] + "' did not run");
  }
  if (options.only.empty() && registry().size() != manifest.size()) {
    throw InvariantError("verify registry and manifest disagree");
  }
  return results;
}

}  // namespace walshmeans
