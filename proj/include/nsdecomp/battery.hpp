#pragma once

// Seeded random instance batteries.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nsdecomp/instance_io.hpp"

namespace nsdecomp {

/// Multiplicity bucket (lo, hi]; lo == hi selects exactly hi. Multiplicities
/// below 3 are never generated.
struct Bucket {
  Int lo = 0;
  Int hi = 0;

  std::string label() const;
  Int min_m() const;
};

/// "(5,10]", "5,10" or "5-10".
Bucket parse_bucket(std::string_view text);

struct BatteryConfig {
  std::vector<Bucket> buckets;
  Int gen_lo = 2;
  Int gen_hi = 5000;
  std::size_t count = 1;  // per bucket
  std::optional<std::size_t> sg_cap;
  std::uint64_t seed = 1;
  std::size_t max_attempts = 100'000;
  std::size_t max_extra_generators = 8;
};

/// Throws Error(InvalidConfig) on an unusable configuration.
void validate(const BatteryConfig& config);

/// Each instance is drawn from its own generator, seeded by (seed, bucket,
/// index), so any single instance can be regenerated in isolation. Throws
/// Error(BucketExhausted) when a bucket yields no acceptable semigroup within
/// max_attempts draws.
std::vector<InstanceSpec> generate_battery(const BatteryConfig& config);

/// Presets shaped like the three published batteries ("I", "II", "III").
BatteryConfig battery_preset(std::string_view name, std::uint64_t seed);

}  // namespace nsdecomp
