#include "walshmeans/subsequence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "walshmeans/errors.hpp"

namespace walshmeans {

namespace {

constexpr long double kGrowthGuard = 1e-12L;

void require_growth_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw ArgumentError("growth exponent delta must lie in (0, 1]");
}

// a(n) / n^delta in extended precision.
long double growth_increment(std::uint64_t prev, std::size_t n, double delta) {
  return static_cast<long double>(prev) / std::pow(static_cast<long double>(n), static_cast<long double>(delta));
}

std::vector<std::uint64_t> minimal_growth_values(const SequenceParams& p, std::size_t count, bool stop_at_limit) {
  require_growth_delta(p.delta);
  if (p.a1 < 1) throw ArgumentError("minimal_growth requires a(1) >= 1");
  std::vector<std::uint64_t> v;
  v.reserve(count);
  v.push_back(p.a1);
  while (v.size() < count) {
    const std::size_t n = v.size();
    const std::uint64_t prev = v.back();
    const long double need = std::ceil(growth_increment(prev, n, p.delta) * (1.0L - kGrowthGuard));
    const long double next = static_cast<long double>(prev) + std::max(1.0L, need);
    if (next > static_cast<long double>(kSequenceLimit)) {
      if (stop_at_limit) break;
      throw GenerationError("minimal_growth: a(" + std::to_string(n + 1) + ") exceeds 2^62", n);
    }
    v.push_back(static_cast<std::uint64_t>(next));
  }
  return v;
}

std::vector<std::uint64_t> lacunary_values(const SequenceParams& p, std::size_t count, bool stop_at_limit) {
  if (!(p.ratio > 1.0)) throw ArgumentError("lacunary requires ratio q > 1");
  if (p.a1 < 1) throw ArgumentError("lacunary requires a(1) >= 1");
  std::vector<std::uint64_t> v;
  v.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) {
    const long double raw = std::ceil(static_cast<long double>(p.a1) *
                                      std::pow(static_cast<long double>(p.ratio), static_cast<long double>(n - 1)));
    long double next = raw;
    if (!v.empty()) next = std::max(next, static_cast<long double>(v.back()) + 1.0L);
    if (next > static_cast<long double>(kSequenceLimit)) {
      if (stop_at_limit) break;
      throw GenerationError("lacunary: a(" + std::to_string(n) + ") exceeds 2^62", n - 1);
    }
    v.push_back(static_cast<std::uint64_t>(next));
  }
  return v;
}

std::vector<std::uint64_t> polynomial_values(const SequenceParams& p, std::size_t count, bool stop_at_limit) {
  if (p.degree < 1) throw ArgumentError("polynomial requires degree d >= 1");
  std::vector<std::uint64_t> v;
  v.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) {
    std::uint64_t x = 1;
    bool overflow = false;
    for (int e = 0; e < p.degree && !overflow; ++e) {
      overflow = x > kSequenceLimit / n;
      if (!overflow) x *= n;
    }
    if (overflow) {
      if (stop_at_limit) break;
      throw GenerationError("polynomial: a(" + std::to_string(n) + ") exceeds 2^62", n - 1);
    }
    v.push_back(x);
  }
  return v;
}

std::vector<std::uint64_t> generate(SequenceKind kind, const SequenceParams& p, std::size_t count,
                                    bool stop_at_limit) {
  if (count < 1) throw ArgumentError("sequence length must be >= 1");
  switch (kind) {
    case SequenceKind::minimal_growth: return minimal_growth_values(p, count, stop_at_limit);
    case SequenceKind::lacunary: return lacunary_values(p, count, stop_at_limit);
    case SequenceKind::polynomial: return polynomial_values(p, count, stop_at_limit);
    case SequenceKind::explicit_values: break;
  }
  throw ArgumentError("explicit sequences are read from files, not generated");
}

std::optional<double> delta_for(SequenceKind kind, const SequenceParams& p) {
  if (kind == SequenceKind::minimal_growth) return p.delta;
  return std::nullopt;
}

}  // namespace

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::minimal_growth: return "minimal_growth";
    case SequenceKind::lacunary: return "lacunary";
    case SequenceKind::polynomial: return "polynomial";
    case SequenceKind::explicit_values: return "explicit";
  }
  return "unknown";
}

SequenceKind parse_sequence_kind(const std::string& name) {
  if (name == "minimal_growth") return SequenceKind::minimal_growth;
  if (name == "lacunary") return SequenceKind::lacunary;
  if (name == "polynomial") return SequenceKind::polynomial;
  if (name == "explicit") return SequenceKind::explicit_values;
  throw ArgumentError("unknown sequence kind '" + name + "'");
}

Subsequence::Subsequence(SequenceKind kind, std::optional<double> delta, std::vector<std::uint64_t> values)
    : kind_(kind), delta_(delta), values_(std::move(values)) {
  if (values_.empty()) throw ArgumentError("sequence must be non-empty");
  if (values_.front() < 1) throw ArgumentError("sequence values must be positive");
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] <= values_[i - 1]) {
      throw ArgumentError("sequence not strictly increasing at n = " + std::to_string(i + 1));
    }
  }
  if (values_.back() > kSequenceLimit) throw ArgumentError("sequence values must not exceed 2^62");
}

std::uint64_t Subsequence::at(std::size_t n) const {
  if (n < 1 || n > values_.size()) {
    throw ArgumentError("sequence index " + std::to_string(n) + " outside [1, " +
                        std::to_string(values_.size()) + "]");
  }
  return values_[n - 1];
}

int Subsequence::exponent(std::size_t n) const { return 63 - std::countl_zero(at(n)); }

std::size_t Subsequence::admissible_count(std::uint64_t bound) const {
  const auto it = std::lower_bound(values_.begin(), values_.end(), bound);
  return static_cast<std::size_t>(it - values_.begin());
}

Subsequence gen_sequence(SequenceKind kind, const SequenceParams& params, std::size_t count) {
  return Subsequence(kind, delta_for(kind, params), generate(kind, params, count, false));
}

Subsequence gen_sequence_until_limit(SequenceKind kind, const SequenceParams& params, std::size_t max_count) {
  return Subsequence(kind, delta_for(kind, params), generate(kind, params, max_count, true));
}

bool satisfies_growth(std::uint64_t prev, std::uint64_t next, std::size_t n, double delta) {
  require_growth_delta(delta);
  if (next <= prev) return false;
  const long double step = static_cast<long double>(next - prev);
  return step >= growth_increment(prev, n, delta) * (1.0L - kGrowthGuard);
}

std::optional<std::size_t> check_growth(const Subsequence& a, double delta) {
  require_growth_delta(delta);
  const auto& v = a.values();
  for (std::size_t n = 1; n < v.size(); ++n) {
    if (!satisfies_growth(v[n - 1], v[n], n, delta)) return n;
  }
  return std::nullopt;
}

ShellStep shell_step(double delta, int m) {
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("shell_step: delta must lie in (0, 1)");
  if (m < 0) throw ArgumentError("shell_step: negative shell index");
  const long double kappa = std::pow(2.0L, 1.0L + delta) * std::log(2.0L) + 2.0L;
  const long double r = std::ceil(kappa * std::pow(2.0L, static_cast<long double>(m) * delta));
  if (r > static_cast<long double>(kSequenceLimit)) throw ArgumentError("shell_step: R_m exceeds 2^62");
  return ShellStep{static_cast<double>(kappa), static_cast<std::uint64_t>(r)};
}

ShellPartition shell_partition(const Subsequence& a, double delta, int m) {
  if (m < 0 || m > 40) throw ArgumentError("shell_partition: shell index outside [0, 40]");
  const ShellStep s = shell_step(delta, m);
  const std::size_t lo = std::size_t{1} << m;
  const std::size_t hi = (std::size_t{1} << (m + 1)) - 1;  // inclusive
  if (a.size() < hi) {
    throw ArgumentError("shell_partition: shell " + std::to_string(m) + " needs a(1.." + std::to_string(hi) +
                        "), sequence has " + std::to_string(a.size()));
  }
  ShellPartition p{m, s.kappa, s.step, {}, {}};
  p.classes.resize(s.step);
  p.head_classes.resize(s.step);
  for (std::uint64_t b = 0; b < s.step; ++b) p.classes[b].residue = b;
  for (std::size_t n = lo + 1; n <= hi; ++n) {
    ResidueClass& c = p.classes[n % s.step];
    c.indices.push_back(n);
    c.exponents.push_back(a.exponent(n));
  }
  for (std::size_t n = 1; n <= lo; ++n) p.head_classes[n % s.step].push_back(n);
  return p;
}

LacunarityReport verify_shell_lacunarity(const Subsequence& a, double delta, int m_max) {
  if (m_max < 0 || m_max > 40) throw ArgumentError("verify_shell_lacunarity: m_max outside [0, 40]");
  if (const auto bad = check_growth(a, delta)) {
    throw ArgumentError("verify_shell_lacunarity: growth condition fails at n = " + std::to_string(*bad));
  }
  const std::size_t need = std::size_t{1} << (m_max + 1);
  if (a.size() < need) {
    throw ArgumentError("verify_shell_lacunarity: needs a(1.." + std::to_string(need) + "), sequence has " +
                        std::to_string(a.size()));
  }
  LacunarityReport report;
  for (int m = 0; m <= m_max; ++m) {
    const std::uint64_t step = shell_step(delta, m).step;
    const std::size_t end = std::size_t{1} << (m + 1);
    for (std::size_t beta = 1; beta + step <= end; ++beta) {
      ++report.pairs_checked;
      const std::uint64_t lo = a.at(beta);
      const std::uint64_t hi = a.at(beta + step);
      // a <= 2^62, so 2a fits in 64 bits
      const bool doubled = hi >= 2 * lo;
      const bool exponent_up = a.exponent(beta + step) >= a.exponent(beta) + 1;
      if (!doubled || !exponent_up) report.failures.push_back({m, beta});
    }
  }
  return report;
}

void write_sequence(std::ostream& out, const Subsequence& a) {
  out << "# kind=" << to_string(a.kind()) << " delta=";
  if (a.delta()) {
    std::ostringstream d;
    d.precision(17);
    d << *a.delta();
    out << d.str();
  } else {
    out << "none";
  }
  out << '\n';
  for (std::uint64_t v : a.values()) out << v << '\n';
}

Subsequence read_sequence(std::istream& in) {
  SequenceKind kind = SequenceKind::explicit_values;
  std::optional<double> delta;
  std::vector<std::uint64_t> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream tokens(line.substr(first + 1));
      std::string tok;
      while (tokens >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string value = tok.substr(eq + 1);
        if (key == "kind") {
          kind = parse_sequence_kind(value);
        } else if (key == "delta" && value != "none") {
          try {
            delta = std::stod(value);
          } catch (const std::exception&) {
            throw ArgumentError("sequence file line " + std::to_string(line_no) + ": bad delta '" + value + "'");
          }
        }
      }
      continue;
    }
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(line.substr(first), &used);
    } catch (const std::exception&) {
      throw ArgumentError("sequence file line " + std::to_string(line_no) + ": not an integer");
    }
    if (line.find_first_not_of(" \t", first + used) != std::string::npos || line[first] == '-') {
      throw ArgumentError("sequence file line " + std::to_string(line_no) + ": not an integer");
    }
    values.push_back(v);
  }
  return Subsequence(kind, delta, std::move(values));
}

}  // namespace walshmeans
