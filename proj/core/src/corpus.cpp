#include "walshmeans/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "walshmeans/errors.hpp"
#include "walshmeans/walsh.hpp"

namespace walshmeans {

namespace {

const std::map<std::string, std::vector<std::string>>& positional_keys() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"indicator", {"k"}},
      {"spike", {"k"}},
      {"sawtooth", {}},
      {"walsh_poly", {}},
      {"random_step", {"seed", "sparsity", "level"}},
  };
  return keys;
}

class ParamReader {
 public:
  explicit ParamReader(const FunctionSpec& spec) : spec_(spec) {}

  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : spec_.params) {
      if (k == key) return &v;
    }
    return nullptr;
  }

  double real(const std::string& key, double fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    try {
      std::size_t used = 0;
      const double x = std::stod(*v, &used);
      if (used != v->size() || !std::isfinite(x)) throw std::invalid_argument(*v);
      return x;
    } catch (const std::exception&) {
      throw ArgumentError(spec_.name + ": parameter " + key + " = '" + *v + "' is not a real number");
    }
  }

  std::uint64_t integer(const std::string& key, std::uint64_t fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    try {
      std::size_t used = 0;
      if (!v->empty() && (*v)[0] == '-') throw std::invalid_argument(*v);
      const std::uint64_t x = std::stoull(*v, &used);
      if (used != v->size()) throw std::invalid_argument(*v);
      return x;
    } catch (const std::exception&) {
      throw ArgumentError(spec_.name + ": parameter " + key + " = '" + *v + "' is not a nonnegative integer");
    }
  }

  std::uint64_t required_integer(const std::string& key) const {
    if (!find(key)) throw ArgumentError(spec_.name + ": missing parameter " + key);
    return integer(key, 0);
  }

 private:
  const FunctionSpec& spec_;
};

std::size_t cells(int resolution) { return std::size_t{1} << resolution; }

std::uint64_t rank_below_resolution(const ParamReader& p, const std::string& name, int resolution) {
  const std::uint64_t k = p.required_integer("k");
  if (k >= static_cast<std::uint64_t>(std::max(resolution, 0)) && !(k == 0 && resolution == 0)) {
    throw ArgumentError(name + "(" + std::to_string(k) + ") needs k < M = " + std::to_string(resolution));
  }
  return k;
}

StepFunction make_indicator(const ParamReader& p, int resolution, bool spike) {
  const std::uint64_t k = rank_below_resolution(p, spike ? "spike" : "indicator", resolution);
  std::vector<double> v(cells(resolution), 0.0);
  std::fill_n(v.begin(), cells(resolution) >> k, spike ? std::ldexp(1.0, static_cast<int>(k)) : 1.0);
  return StepFunction(resolution, std::move(v));
}

StepFunction make_sawtooth(int resolution) {
  std::vector<double> v(cells(resolution));
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::ldexp(static_cast<double>(j) + 0.5, -resolution);
  return StepFunction(resolution, std::move(v));
}

StepFunction make_walsh_poly(const FunctionSpec& spec, int resolution) {
  std::vector<double> c(cells(resolution), 0.0);
  const ParamReader reader(spec);
  for (const auto& [key, value] : spec.params) {
    if (key == "normalize") continue;
    std::uint64_t index = 0;
    try {
      std::size_t used = 0;
      index = std::stoull(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ArgumentError("walsh_poly: expected index=coefficient, got '" + key + "'");
    }
    if (index >= c.size()) {
      throw ArgumentError("walsh_poly: index " + std::to_string(index) + " needs resolution > " +
                          std::to_string(resolution));
    }
    c[index] += reader.real(key, 0.0);
  }
  return synthesize(Spectrum(resolution, std::move(c)));
}

// Uniform double in [0, 1) from the top 53 bits; stable across standard libraries.
double unit_uniform(std::mt19937_64& rng) { return std::ldexp(static_cast<double>(rng() >> 11), -53); }

StepFunction make_random_step(const ParamReader& p, int resolution) {
  const std::uint64_t seed = p.integer("seed", 0);
  const double sparsity = p.real("sparsity", 0.0);
  if (sparsity < 0.0 || sparsity > 1.0) throw ArgumentError("random_step: sparsity must lie in [0, 1]");
  const std::uint64_t level = p.integer("level", static_cast<std::uint64_t>(std::min(resolution, 10)));
  if (level > static_cast<std::uint64_t>(resolution)) {
    throw ArgumentError("random_step: level must not exceed M = " + std::to_string(resolution));
  }
  std::mt19937_64 rng(seed);
  const std::size_t coarse = std::size_t{1} << level;
  const std::size_t width = cells(resolution) / coarse;
  std::vector<double> v(cells(resolution));
  for (std::size_t c = 0; c < coarse; ++c) {
    const double value = 2.0 * unit_uniform(rng) - 1.0;
    const bool zeroed = unit_uniform(rng) < sparsity;
    std::fill_n(v.begin() + static_cast<std::ptrdiff_t>(c * width), width, zeroed ? 0.0 : value);
  }
  return StepFunction(resolution, std::move(v));
}

}  // namespace

std::string FunctionSpec::to_string() const {
  std::string s = name;
  for (std::size_t i = 0; i < params.size(); ++i) {
    s += i == 0 ? ':' : ',';
    s += params[i].first + "=" + params[i].second;
  }
  return s;
}

FunctionSpec parse_function_spec(const std::string& text) {
  FunctionSpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  const auto keys = positional_keys().find(spec.name);
  if (keys == positional_keys().end()) throw ArgumentError("unknown builtin function '" + spec.name + "'");
  if (colon == std::string::npos) return spec;

  const std::string rest = text.substr(colon + 1);
  std::size_t positional = 0;
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    const std::string tok = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!tok.empty()) {
      const auto eq = tok.find('=');
      if (eq != std::string::npos) {
        spec.params.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
      } else {
        if (positional >= keys->second.size()) {
          throw ArgumentError(spec.name + ": unexpected positional parameter '" + tok + "'");
        }
        spec.params.emplace_back(keys->second[positional++], tok);
      }
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return spec;
}

StepFunction builtin_function(const FunctionSpec& spec, int resolution) {
  check_resolution(resolution);
  const ParamReader reader(spec);
  StepFunction f = [&] {
    if (spec.name == "indicator") return make_indicator(reader, resolution, false);
    if (spec.name == "spike") return make_indicator(reader, resolution, true);
    if (spec.name == "sawtooth") return make_sawtooth(resolution);
    if (spec.name == "walsh_poly") return make_walsh_poly(spec, resolution);
    if (spec.name == "random_step") return make_random_step(reader, resolution);
    throw ArgumentError("unknown builtin function '" + spec.name + "'");
  }();
  if (reader.integer("normalize", 0) != 0) {
    const double l1 = f.l1_norm();
    if (l1 > 0.0) f *= 1.0 / l1;
  }
  return f;
}

StepFunction builtin_function(const std::string& text, int resolution) {
  return builtin_function(parse_function_spec(text), resolution);
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& [name, keys] : positional_keys()) names.push_back(name);
  return names;
}

std::vector<std::pair<std::string, StepFunction>> standard_corpus(int resolution, std::uint64_t seed) {
  if (resolution < 4) throw ArgumentError("standard_corpus needs resolution >= 4");
  const int k = std::min(6, resolution - 1);
  const std::uint64_t high = (std::uint64_t{1} << (resolution - 1)) + 3;
  std::vector<std::string> specs{
      "spike:3",
      "spike:" + std::to_string(k),
      "indicator:1",
      "sawtooth",
      "walsh_poly:1=1,6=-0.5," + std::to_string(high) + "=0.25",
      "random_step:seed=" + std::to_string(seed) + ",sparsity=0.5,level=" + std::to_string(std::min(resolution, 8)),
      "random_step:seed=" + std::to_string(seed + 1) + ",level=" + std::to_string(resolution),
  };
  std::vector<std::pair<std::string, StepFunction>> corpus;
  for (const auto& s : specs) corpus.emplace_back(s, builtin_function(s, resolution));
  return corpus;
}

}  // namespace walshmeans
