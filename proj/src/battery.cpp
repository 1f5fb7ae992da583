#include "nsdecomp/battery.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "nsdecomp/error.hpp"

namespace nsdecomp {

namespace {

// Uniform draw in [lo, hi] by rejection, independent of the standard
// library's distribution implementations so files are portable.
Int draw(std::mt19937_64& rng, Int lo, Int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return lo + static_cast<Int>(r % span);
}

std::uint64_t instance_seed(std::uint64_t seed, std::size_t bucket, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(bucket), static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  return rng();
}

}  // namespace

std::string Bucket::label() const { return "(" + std::to_string(lo) + "," + std::to_string(hi) + "]"; }

Int Bucket::min_m() const { return lo == hi ? hi : std::max<Int>(lo + 1, 3); }

Bucket parse_bucket(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c == '(' || c == ']' || c == '[' || c == ')' || std::isspace(static_cast<unsigned char>(c))) continue;
    s += (c == '-' || c == ':') ? ',' : c;
  }
  const auto v = parse_int_list(s);
  if (v.size() != 2) throw Error(Errc::ParseError, "bucket '" + std::string(text) + "' needs two bounds");
  return Bucket{v[0], v[1]};
}

void validate(const BatteryConfig& config) {
  auto bad = [](const std::string& what) { throw Error(Errc::InvalidConfig, what); };
  for (const auto& b : config.buckets) {
    if (b.lo < 0 || b.hi < b.lo) bad("bucket " + b.label() + " is empty");
    if (b.hi < 3) bad("bucket " + b.label() + " has no multiplicity >= 3");
    if (b.hi > kMaxMultiplicity) bad("bucket " + b.label() + " exceeds the largest supported multiplicity");
  }
  if (config.gen_lo < 2 || config.gen_hi < config.gen_lo) bad("generator range must satisfy 2 <= lo <= hi");
  if (config.max_attempts == 0) bad("max_attempts must be positive");
  if (config.max_extra_generators == 0) bad("max_extra_generators must be positive");
}

std::vector<InstanceSpec> generate_battery(const BatteryConfig& config) {
  validate(config);
  std::vector<InstanceSpec> out;
  for (std::size_t b = 0; b < config.buckets.size(); ++b) {
    const Bucket& bucket = config.buckets[b];
    const Int m_lo = bucket.min_m();
    if (std::max(m_lo + 1, config.gen_lo) > config.gen_hi) {
      throw Error(Errc::BucketExhausted, "bucket " + bucket.label() + ": no generator in [" +
                                             std::to_string(config.gen_lo) + "," + std::to_string(config.gen_hi) +
                                             "] exceeds the multiplicity " + std::to_string(m_lo));
    }
    for (std::size_t i = 0; i < config.count; ++i) {
      const std::uint64_t seed = instance_seed(config.seed, b, i);
      std::mt19937_64 rng(seed);
      std::optional<InstanceSpec> found;
      for (std::size_t attempt = 0; attempt < config.max_attempts && !found; ++attempt) {
        const Int m = draw(rng, m_lo, bucket.hi);
        const Int g_lo = std::max(m + 1, config.gen_lo);
        if (g_lo > config.gen_hi) continue;
        const Int extra = draw(rng, 1, static_cast<Int>(config.max_extra_generators));
        std::vector<Int> gens{m};
        Int g = m;
        for (Int k = 0; k < extra; ++k) {
          gens.push_back(draw(rng, g_lo, config.gen_hi));
          g = std::gcd(g, gens.back());
        }
        if (g != 1) continue;
        const auto x = kunz_from_generators(NumericalSemigroup(gens));
        if (config.sg_cap && special_gaps_above_m(x).size() > *config.sg_cap) continue;
        InstanceSpec spec;
        spec.id = bucket.label() + "/" + std::to_string(i + 1);
        spec.bucket = bucket.label();
        spec.seed = seed;
        spec.generators = generators_from_kunz(x).generators();
        found = std::move(spec);
      }
      if (!found) {
        throw Error(Errc::BucketExhausted, "bucket " + bucket.label() + ": no acceptable semigroup after " +
                                               std::to_string(config.max_attempts) + " attempts");
      }
      out.push_back(std::move(*found));
    }
  }
  return out;
}

BatteryConfig battery_preset(std::string_view name, std::uint64_t seed) {
  BatteryConfig c;
  c.seed = seed;
  if (name == "I") {
    c.buckets = {{0, 5}, {5, 10}, {10, 15}, {15, 20}, {20, 25}};
    c.count = 10;
  } else if (name == "II") {
    c.buckets = {{10, 25}, {25, 50}, {50, 100}, {100, 250}, {250, 500}, {500, 1000}, {1000, 2000}};
    c.count = 5;
  } else if (name == "III") {
    c.buckets = {{25, 50}, {50, 75}, {75, 100}, {100, 125}, {125, 150}};
    c.count = 10;
    c.sg_cap = 30;
  } else {
    throw Error(Errc::InvalidConfig, "unknown battery '" + std::string(name) + "' (expected I, II or III)");
  }
  return c;
}

}  // namespace nsdecomp
