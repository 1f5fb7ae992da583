#include "nsdecomp/bench.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>

#include "nsdecomp/error.hpp"

namespace nsdecomp {

namespace {

struct Run {
  std::size_t instance;
  double seconds;
  std::size_t sg;
  std::optional<std::size_t> parts;
  std::string error;
};

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + '"';
}

std::string optional3(const std::optional<double>& v) { return v ? fixed3(*v) : std::string(); }

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<InstanceSpec>& instances, const std::vector<Method>& methods,
                                const DecomposeOptions& options) {
  std::vector<std::string> bucket_order;
  std::map<std::string, std::map<Method, std::vector<Run>>> runs;
  std::vector<std::optional<std::size_t>> reference(instances.size());
  std::vector<BenchRow> failures;

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& spec = instances[i];
    const std::string bucket = spec.bucket.empty() ? "-" : spec.bucket;
    if (std::find(bucket_order.begin(), bucket_order.end(), bucket) == bucket_order.end()) {
      bucket_order.push_back(bucket);
    }
    std::optional<KunzCoordinates> x;
    try {
      x = spec.load();
    } catch (const Error& e) {
      failures.push_back({bucket, "load!" + std::string(errc_name(e.code())), 1, 0.0, 0.0, {}, {}});
      continue;
    }
    const std::size_t sg = special_gaps_above_m(*x).size();
    std::map<Method, std::size_t> sizes;
    for (Method method : methods) {
      Run run{i, 0.0, sg, {}, {}};
      const auto start = std::chrono::steady_clock::now();
      try {
        run.parts = decompose(*x, method, options).parts.size();
        sizes[method] = *run.parts;
      } catch (const Error& e) {
        run.error = errc_name(e.code());
      }
      run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      runs[bucket][method].push_back(std::move(run));
    }
    for (Method ref : {Method::Compact, Method::Exact, Method::Oracle}) {
      if (sizes.count(ref)) {
        reference[i] = sizes[ref];
        break;
      }
    }
  }

  std::vector<BenchRow> rows;
  for (const auto& bucket : bucket_order) {
    for (Method method : methods) {
      const auto& list = runs[bucket][method];
      BenchRow row{bucket, std::string(method_name(method)), 0, 0.0, 0.0, {}, {}};
      double parts = 0, gap = 0;
      std::size_t gap_count = 0;
      for (const auto& r : list) {
        if (!r.parts) {
          rows.push_back({bucket, row.method + "!" + r.error, 1, r.seconds, static_cast<double>(r.sg), {}, {}});
          continue;
        }
        ++row.runs;
        row.time_s += r.seconds;
        row.sg_mean += static_cast<double>(r.sg);
        parts += static_cast<double>(*r.parts);
        if (reference[r.instance]) {
          gap += static_cast<double>(*r.parts) - static_cast<double>(*reference[r.instance]);
          ++gap_count;
        }
      }
      if (row.runs == 0) continue;
      const double n = static_cast<double>(row.runs);
      row.time_s /= n;
      row.sg_mean /= n;
      row.parts_mean = parts / n;
      if (gap_count) row.gap_mean = gap / static_cast<double>(gap_count);
      rows.push_back(std::move(row));
    }
    for (const auto& f : failures) {
      if (f.bucket == bucket) rows.push_back(f);
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << kBenchColumns << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.bucket) << ',' << csv_field(r.method) << ',' << fixed3(r.time_s) << ',' << fixed3(r.sg_mean) << ','
        << optional3(r.parts_mean) << ',' << optional3(r.gap_mean) << '\n';
  }
  return out.str();
}

std::string bench_table(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-14s %-26s %5s %10s %8s %10s %8s\n", "bucket", "method", "runs", "time_s",
                "sg_mean", "parts_mean", "gap_mean");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-14s %-26s %5zu %10s %8s %10s %8s\n", r.bucket.c_str(), r.method.c_str(),
                  r.runs, fixed3(r.time_s).c_str(), fixed3(r.sg_mean).c_str(), optional3(r.parts_mean).c_str(),
                  optional3(r.gap_mean).c_str());
    out << line;
  }
  return out.str();
}

}  // namespace nsdecomp
