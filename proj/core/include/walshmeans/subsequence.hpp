#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace walshmeans {

enum class SequenceKind { minimal_growth, lacunary, polynomial, explicit_values };

std::string to_string(SequenceKind kind);
SequenceKind parse_sequence_kind(const std::string& name);

/// Largest value any generated sequence may take.
inline constexpr std::uint64_t kSequenceLimit = std::uint64_t{1} << 62;

/// Strictly increasing a(1..N). Indices are 1-based as in a(n).
class Subsequence {
 public:
  Subsequence(SequenceKind kind, std::optional<double> delta, std::vector<std::uint64_t> values);

  SequenceKind kind() const noexcept { return kind_; }
  std::optional<double> delta() const noexcept { return delta_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<std::uint64_t>& values() const noexcept { return values_; }

  /// a(n), 1 <= n <= size().
  std::uint64_t at(std::size_t n) const;
  /// A(n) = |a(n)|.
  int exponent(std::size_t n) const;

  /// Largest N with a(N) < bound (0 if a(1) >= bound).
  std::size_t admissible_count(std::uint64_t bound) const;

  bool operator==(const Subsequence&) const = default;

 private:
  SequenceKind kind_;
  std::optional<double> delta_;
  std::vector<std::uint64_t> values_;
};

struct SequenceParams {
  double delta = 0.5;      // minimal_growth
  std::uint64_t a1 = 1;    // minimal_growth, lacunary
  double ratio = 2.0;      // lacunary
  int degree = 2;          // polynomial
};

/// minimal_growth: a(n+1) = smallest integer > a(n) satisfying the growth
/// condition; lacunary: max(a(n-1)+1, ceil(a1 q^{n-1})); polynomial: n^d.
/// Throws GenerationError if a(count) would exceed 2^62.
Subsequence gen_sequence(SequenceKind kind, const SequenceParams& params, std::size_t count);

/// Like gen_sequence but stops silently at the 2^62 limit.
Subsequence gen_sequence_until_limit(SequenceKind kind, const SequenceParams& params,
                                     std::size_t max_count);

/// Whether next >= (1 + n^-delta) prev, with a relative guard of 1e-12.
bool satisfies_growth(std::uint64_t prev, std::uint64_t next, std::size_t n, double delta);

/// Smallest n with a(n+1) < (1 + n^-delta) a(n), or nullopt if none.
std::optional<std::size_t> check_growth(const Subsequence& a, double delta);

struct ShellStep {
  double kappa;
  std::uint64_t step;  // R_m
};

/// kappa_delta = 2^{1+delta} ln 2 + 2 and R_m = ceil(kappa 2^{m delta}).
/// Requires 0 < delta < 1.
ShellStep shell_step(double delta, int m);

struct ResidueClass {
  std::uint64_t residue;                // b
  std::vector<std::size_t> indices;     // n_{b,1} < ... < n_{b,L}
  std::vector<int> exponents;           // k_{b,s} = |a(n_{b,s})|
};

struct ShellPartition {
  int m;
  double kappa;
  std::uint64_t step;
  /// Tail shell {2^m+1, ..., 2^{m+1}-1} by residue mod R_m; entry b is class b.
  std::vector<ResidueClass> classes;
  /// Head range {1, ..., 2^m} by residue (the sets J_{m,b}, as indices b + j R_m).
  std::vector<std::vector<std::size_t>> head_classes;
};

/// Requires a defined up to index 2^{m+1} - 1.
ShellPartition shell_partition(const Subsequence& a, double delta, int m);

struct LacunarityFailure {
  int m;
  std::size_t beta;
  bool operator==(const LacunarityFailure&) const = default;
};

struct LacunarityReport {
  std::size_t pairs_checked = 0;
  std::vector<LacunarityFailure> failures;
  bool ok() const noexcept { return failures.empty(); }
};

/// For m <= m_max and beta + R_m <= 2^{m+1}: a(beta+R_m) >= 2 a(beta) and
/// |a(beta+R_m)| >= |a(beta)| + 1. Requires check_growth(a, delta) to pass and
/// a(1..2^{m_max+1}) to exist.
LacunarityReport verify_shell_lacunarity(const Subsequence& a, double delta, int m_max);

/// One integer per line after a header "# kind=<kind> delta=<value|none>".
void write_sequence(std::ostream& out, const Subsequence& a);
Subsequence read_sequence(std::istream& in);

}  // namespace walshmeans
