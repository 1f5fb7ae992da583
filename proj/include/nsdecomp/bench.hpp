#pragma once

// Per-bucket timing and quality summaries over an instance battery.

#include <optional>
#include <string>
#include <vector>

#include "nsdecomp/instance_io.hpp"

namespace nsdecomp {

/// One aggregated row. A failed run gets a row of its own whose method reads
/// "<method>!<error code>" and whose part columns are empty.
struct BenchRow {
  std::string bucket;
  std::string method;
  std::size_t runs = 0;
  double time_s = 0.0;
  double sg_mean = 0.0;
  std::optional<double> parts_mean;
  std::optional<double> gap_mean;  // parts minus the minimal size, when one is known
};

/// Runs every method on every instance. The minimal reference of an
/// instance is the first successful run among compact, exact and oracle.
std::vector<BenchRow> run_bench(const std::vector<InstanceSpec>& instances, const std::vector<Method>& methods,
                                const DecomposeOptions& options);

inline constexpr const char* kBenchColumns = "bucket,method,time_s,sg_mean,parts_mean,gap_mean";

std::string bench_csv(const std::vector<BenchRow>& rows);
std::string bench_table(const std::vector<BenchRow>& rows);

}  // namespace nsdecomp
