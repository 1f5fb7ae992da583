#include "nsdecomp/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "nsdecomp/battery.hpp"
#include "nsdecomp/bench.hpp"
#include "nsdecomp/instance_io.hpp"
#include "nsdecomp/ip_model.hpp"

namespace nsdecomp {

namespace {

struct InputArgs {
  std::string gens;
  std::string kunz;

  KunzCoordinates load() const {
    if (gens.empty() == kunz.empty()) throw Error(Errc::ParseError, "give exactly one of --gens and --kunz");
    return gens.empty() ? parse_kunz(kunz) : kunz_from_generators(parse_generators(gens));
  }
};

struct LimitArgs {
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> time_limit;
  std::size_t max_optima = 100'000;
  std::size_t oracle_max_nodes = 200'000;
  Int oracle_max_m = 12;

  DecomposeOptions options() const {
    DecomposeOptions o;
    if (const char* env = std::getenv("NSDECOMP_MAX_NODES")) o.limits.max_nodes = parse_env<std::uint64_t>(env);
    if (const char* env = std::getenv("NSDECOMP_TIME_LIMIT")) o.limits.max_seconds = parse_env<double>(env);
    if (max_nodes) o.limits.max_nodes = *max_nodes;
    if (time_limit) o.limits.max_seconds = *time_limit;
    o.max_optima_per_gap = max_optima;
    o.oracle_max_nodes = oracle_max_nodes;
    return o;
  }

  template <typename T>
  static T parse_env(const char* text) {
    std::istringstream in(text);
    T value{};
    if (!(in >> value) || !(in >> std::ws).eof() || value <= 0) {
      throw Error(Errc::InvalidConfig, std::string("bad limit in environment: '") + text + "'");
    }
    return value;
  }
};

void add_input(CLI::App* cmd, InputArgs& input) {
  auto* g = cmd->add_option("--gens", input.gens, "generators, e.g. 5,11,12,18");
  auto* k = cmd->add_option("--kunz", input.kunz, "multiplicity and Kunz coordinates, e.g. 5:2,2,3,4");
  g->excludes(k);
}

void add_limits(CLI::App* cmd, LimitArgs& limits) {
  cmd->add_option("--max-nodes", limits.max_nodes, "branch-and-bound node budget per solve");
  cmd->add_option("--time-limit", limits.time_limit, "seconds per solve");
  cmd->add_option("--max-optima", limits.max_optima, "cap on optima enumerated per gap (exact method)");
  cmd->add_option("--oracle-max-nodes", limits.oracle_max_nodes, "oversemigroups visited by the oracle");
  cmd->add_option("--oracle-max-m", limits.oracle_max_m, "largest multiplicity the oracle accepts");
}

std::string join(const std::vector<Int>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

std::string read_file(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw Error(Errc::ParseError, "cannot open '" + path + "'");
    buf << file.rdbuf();
  }
  return buf.str();
}

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

void print_info(std::ostream& out, const KunzCoordinates& x) {
  const auto sg = special_gaps_above_m(x);
  out << "m: " << x.multiplicity() << '\n'
      << "kunz: " << to_string(x) << '\n'
      << "generators: " << to_string(generators_from_kunz(x)) << '\n'
      << "genus: " << genus(x) << '\n'
      << "frobenius: " << frobenius(x) << '\n'
      << "gaps: " << gaps(x).size() << '\n'
      << "special gaps above m: {" << join(sg) << "}\n"
      << "m-irreducible: " << (is_m_irreducible(x) ? "true" : "false") << '\n';
}

void print_report(std::ostream& out, const VerificationReport& r) {
  auto mark = [](bool ok) { return ok ? "pass" : "FAIL"; };
  out << "(a) parts valid and contain the input: " << mark(r.parts_valid) << '\n'
      << "(b) parts m-irreducible: " << mark(r.parts_irreducible) << '\n'
      << "(c) intersection equals the input: " << mark(r.max_equals_input) << '\n'
      << "(d) special gaps covered: " << mark(r.special_gaps_covered) << '\n';
  for (const auto& f : r.failures) out << "  " << f << '\n';
  out << "verify: " << (r.ok() ? "ok" : "failed") << '\n';
}

void print_decomposition(std::ostream& out, const Decomposition& d, const VerificationReport& report,
                         double seconds) {
  out << "input: m=" << d.input.multiplicity() << " kunz=" << to_string(d.input)
      << " generators=" << to_string(generators_from_kunz(d.input)) << '\n'
      << "special gaps above m: {" << join(special_gaps_above_m(d.input)) << "}\n"
      << "method: " << method_name(d.method) << '\n'
      << "parts: " << d.parts.size() << (d.minimal ? " (minimal)" : "") << '\n';
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    out << "  " << i + 1 << ". " << to_string(generators_from_kunz(d.parts[i])) << "  kunz=" << to_string(d.parts[i])
        << "  frobenius=" << d.certificates[i].frobenius << "  covers={" << join(d.certificates[i].covered_gaps)
        << "}\n";
  }
  print_report(out, report);
  out << "time: " << format_seconds(seconds) << " s\n";
}

std::vector<KunzCoordinates> parse_candidates(const std::string& text, Int m) {
  std::vector<KunzCoordinates> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(';', start), text.size());
    const auto piece = text.substr(start, end - start);
    if (piece.find_first_not_of(" \t") != std::string::npos) out.emplace_back(m, parse_int_list(piece));
    start = end + 1;
  }
  return out;
}

}  // namespace

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::NotSymmetricallyDecomposable: return kExitNotSymmetric;
    case Errc::SolverLimit:
    case Errc::OracleTooLarge: return kExitLimit;
    case Errc::MalformedModel:
    case Errc::Internal: return kExitInternal;
    default: return kExitInputError;
  }
}

CliResult run_cli(const std::vector<std::string>& args) {
  std::istringstream empty;
  return run_cli(args, empty);
}

CliResult run_cli(const std::vector<std::string>& args, std::istream& in) {
  std::ostringstream out, err;
  CliResult result;

  CLI::App app{"Decompose numerical semigroups into m-irreducible ones", "nsdecomp"};
  app.require_subcommand(1);

  InputArgs input;
  LimitArgs limits;

  auto* info = app.add_subcommand("info", "invariants of a semigroup");
  add_input(info, input);

  std::string method = "compact";
  std::string format = "text";
  bool symmetric = false;
  auto* dec = app.add_subcommand("decompose", "decompose into m-irreducible semigroups");
  add_input(dec, input);
  dec->add_option("--method", method, "exact | heuristic | compact | oracle")
      ->check(CLI::IsMember({"exact", "heuristic", "compact", "compact-symmetric", "oracle"}));
  dec->add_flag("--symmetric", symmetric, "only parts with odd Frobenius number (compact method)");
  dec->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  add_limits(dec, limits);

  std::string verify_path;
  auto* ver = app.add_subcommand("verify", "check a decomposition written by 'decompose --format json'");
  ver->add_option("file", verify_path, "JSON file, or - for standard input")->required();

  std::string battery, gen_range = "2,5000", output;
  std::vector<std::string> buckets;
  BatteryConfig config;
  std::optional<std::size_t> sg_cap;
  auto* gen = app.add_subcommand("generate", "write a seeded random instance battery (JSON lines)");
  gen->add_option("--battery", battery, "preset: I, II or III");
  gen->add_option("--bucket", buckets, "multiplicity bucket (lo,hi]; repeatable");
  gen->add_option("--gen-range", gen_range, "generator range lo,hi");
  gen->add_option("--count", config.count, "instances per bucket");
  gen->add_option("--sg-cap", sg_cap, "reject instances with more special gaps above m");
  gen->add_option("--seed", config.seed, "RNG seed");
  gen->add_option("--max-attempts", config.max_attempts, "draws per instance before giving up");
  gen->add_option("--max-extra-gens", config.max_extra_generators, "generators drawn besides m");
  gen->add_option("-o,--output", output, "output file (default: standard output)");

  std::string bench_path, methods = "compact,heuristic", bench_format = "csv";
  auto* bench = app.add_subcommand("bench", "time methods on an instance file");
  bench->add_option("file", bench_path, "instance file, or - for standard input")->required();
  bench->add_option("--methods", methods, "comma-separated methods");
  bench->add_option("--format", bench_format, "csv | text")->check(CLI::IsMember({"csv", "text"}));
  add_limits(bench, limits);

  std::string kind, candidates;
  std::optional<Int> h, k;
  auto* exp = app.add_subcommand("export", "write a model in LP format");
  add_input(exp, input);
  exp->add_option("--kind", kind, "pk | ip | ipm | heuristic | setcover | compact | compact-symmetric")
      ->required()
      ->check(CLI::IsMember({"pk", "ip", "ipm", "heuristic", "setcover", "compact", "compact-symmetric",
                             "compact-pseudosymmetric"}));
  exp->add_option("--gap", h, "special gap h (ip, ipm, heuristic)");
  exp->add_option("--k", k, "Frobenius residue (pk)");
  exp->add_option("--candidates", candidates, "Kunz vectors for setcover, e.g. 2,1,1,1;1,2,3,4");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  try {
    if (info->parsed()) {
      print_info(out, input.load());
    } else if (dec->parsed()) {
      const auto x = input.load();
      Method m = parse_method(method);
      if (symmetric) {
        if (m != Method::Compact && m != Method::CompactSymmetric) {
          throw Error(Errc::InvalidConfig, "--symmetric requires --method compact");
        }
        m = Method::CompactSymmetric;
      }
      const auto options = limits.options();
      if (m == Method::Oracle && x.multiplicity() > limits.oracle_max_m) {
        throw Error(Errc::OracleTooLarge, "multiplicity " + std::to_string(x.multiplicity()) +
                                              " exceeds --oracle-max-m " + std::to_string(limits.oracle_max_m));
      }
      const auto start = std::chrono::steady_clock::now();
      const auto d = decompose(x, m, options);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const auto report = verify(d);
      if (format == "json") {
        out << decomposition_to_json(d, report.ok()).dump(2) << '\n';
      } else {
        print_decomposition(out, d, report, seconds);
      }
      result.exit_code = report.ok() ? kExitOk : kExitVerifyFailed;
    } else if (ver->parsed()) {
      Json j;
      try {
        j = Json::parse(read_file(verify_path, in));
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::ParseError, "invalid JSON at byte " + std::to_string(e.byte));
      }
      const auto report = verify(decomposition_from_json(j));
      print_report(out, report);
      result.exit_code = report.ok() ? kExitOk : kExitVerifyFailed;
    } else if (gen->parsed()) {
      if (!battery.empty()) {
        const auto preset = battery_preset(battery, config.seed);
        if (buckets.empty()) config.buckets = preset.buckets;
        if (gen->count("--count") == 0) config.count = preset.count;
        if (!sg_cap) sg_cap = preset.sg_cap;
      }
      for (const auto& b : buckets) config.buckets.push_back(parse_bucket(b));
      if (config.buckets.empty()) throw Error(Errc::InvalidConfig, "give --bucket or --battery");
      const auto range = parse_int_list(gen_range);
      if (range.size() != 2) throw Error(Errc::ParseError, "--gen-range needs two values");
      config.gen_lo = range[0];
      config.gen_hi = range[1];
      config.sg_cap = sg_cap;
      validate(config);
      const auto specs = config.count == 0 ? std::vector<InstanceSpec>{} : generate_battery(config);
      if (output.empty()) {
        write_instances(out, specs);
      } else {
        std::ofstream file(output);
        if (!file) throw Error(Errc::InvalidConfig, "cannot write '" + output + "'");
        write_instances(file, specs);
      }
    } else if (bench->parsed()) {
      std::istringstream text(read_file(bench_path, in));
      const auto instances = read_instances(text);
      std::vector<Method> ms;
      std::stringstream list(methods);
      for (std::string name; std::getline(list, name, ',');) {
        if (!name.empty()) ms.push_back(parse_method(name));
      }
      const auto rows = run_bench(instances, ms, limits.options());
      out << (bench_format == "text" ? bench_table(rows) : bench_csv(rows));
    } else if (exp->parsed()) {
      const auto x = input.load();
      auto need = [&](const std::optional<Int>& v, const char* flag) {
        if (!v) throw Error(Errc::InvalidConfig, "--kind " + kind + " requires " + flag);
        return *v;
      };
      const auto sg = special_gaps_above_m(x);
      KunzModel model;
      if (kind == "pk") {
        model = build_Pk(x, need(k, "--k"));
      } else if (kind == "ip") {
        model = build_IP_xh(x, need(h, "--gap"));
      } else if (kind == "ipm") {
        model = build_IPm_xh(x, need(h, "--gap"));
      } else if (kind == "heuristic") {
        model = build_heuristic(x, need(h, "--gap"), sg);
      } else if (kind == "setcover") {
        if (candidates.empty()) {
          throw Error(Errc::MissingCandidates, "setcover needs --candidates (Kunz vectors separated by ';')");
        }
        model = build_set_cover(x, sg, parse_candidates(candidates, x.multiplicity()));
      } else {
        const auto restriction = kind == "compact-symmetric"         ? PartRestriction::Symmetric
                                 : kind == "compact-pseudosymmetric" ? PartRestriction::Pseudosymmetric
                                                                     : PartRestriction::None;
        model = build_compact(x, sg, restriction);
      }
      std::string comment = std::string(model_kind_name(model.meta.kind)) + " for " +
                            to_string(generators_from_kunz(x)) + ", kunz " + to_string(x);
      if (model.meta.gap) comment += ", h = " + std::to_string(*model.meta.gap);
      if (model.meta.k) comment += ", k = " + std::to_string(*model.meta.k);
      out << to_lp_format(model.program, comment);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << '\n';
    result.exit_code = kExitInternal;
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace nsdecomp
