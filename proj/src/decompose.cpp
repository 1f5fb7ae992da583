#include "nsdecomp/decompose.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <unordered_set>

#include "nsdecomp/error.hpp"
#include "nsdecomp/ip_model.hpp"

namespace nsdecomp {

namespace {

bool is_trivial(const KunzCoordinates& x, const std::vector<Int>& sg) { return x.is_all_ones() || sg.size() <= 1; }

[[noreturn]] void limit_reached(const std::string& what, const SolveOutcome& out) {
  throw Error(Errc::SolverLimit, what + " stopped after " + std::to_string(out.stats.nodes) + " nodes (" +
                                     std::to_string(out.stats.seconds) + " s)");
}

Decomposition finish(const KunzCoordinates& x, Method method, std::vector<KunzCoordinates> parts, bool minimal) {
  auto d = make_decomposition(x, method, std::move(parts), minimal);
  const auto report = verify(d);
  if (!report.ok()) {
    std::string msg = std::string(method_name(method)) + " produced an invalid decomposition:";
    for (const auto& f : report.failures) msg += " " + f + ";";
    throw Error(Errc::Internal, msg);
  }
  return d;
}

std::vector<Int> y_part(const SolveOutcome& out, std::size_t dim) {
  return {out.witness.begin(), out.witness.begin() + static_cast<std::ptrdiff_t>(dim)};
}

// Candidate pools only need one representative per coverage pattern and
// genus; a candidate is dropped when another one covers at least the same
// special gaps without a larger genus.
std::vector<KunzCoordinates> reduce_pool(std::vector<KunzCoordinates> pool, const std::vector<Int>& sg) {
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::vector<std::vector<bool>> cover(pool.size());
  std::vector<Int> g(pool.size());
  for (std::size_t c = 0; c < pool.size(); ++c) {
    for (Int h : sg) cover[c].push_back(covers_gap(pool[c], h));
    g[c] = genus(pool[c]);
  }
  auto dominates = [&](std::size_t a, std::size_t b) {
    if (g[a] > g[b]) return false;
    for (std::size_t i = 0; i < sg.size(); ++i) {
      if (cover[b][i] && !cover[a][i]) return false;
    }
    // Equal candidates in both respects: keep the first.
    return g[a] < g[b] || cover[a] != cover[b] || a < b;
  };
  std::vector<KunzCoordinates> kept;
  for (std::size_t b = 0; b < pool.size(); ++b) {
    bool dominated = false;
    for (std::size_t a = 0; a < pool.size() && !dominated; ++a) dominated = a != b && dominates(a, b);
    if (!dominated) kept.push_back(pool[b]);
  }
  return kept;
}

std::vector<KunzCoordinates> solve_cover(const KunzCoordinates& x, const std::vector<Int>& sg,
                                         std::vector<KunzCoordinates> pool, const DecomposeOptions& options) {
  const auto model = build_set_cover(x, sg, reduce_pool(std::move(pool), sg));
  const auto out = solve(model.program, options.limits, WitnessPolicy::Canonical);
  if (out.status == SolveStatus::AbortedLimit) limit_reached("set cover", out);
  if (out.status != SolveStatus::Optimal) throw Error(Errc::Internal, "set cover is infeasible");
  std::vector<KunzCoordinates> parts;
  for (std::size_t c = 0; c < model.meta.candidates.size(); ++c) {
    if (out.witness[c] == 1) parts.push_back(model.meta.candidates[c]);
  }
  return parts;
}

struct KunzHash {
  std::size_t operator()(const std::vector<Int>& v) const noexcept {
    std::size_t h = 0;
    for (Int a : v) h = h * 1000003u ^ static_cast<std::size_t>(a);
    return h;
  }
};

}  // namespace

std::string_view method_name(Method method) noexcept {
  switch (method) {
    case Method::Exact: return "exact";
    case Method::Heuristic: return "heuristic";
    case Method::Compact: return "compact";
    case Method::CompactSymmetric: return "compact-symmetric";
    case Method::Oracle: return "oracle";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::Exact, Method::Heuristic, Method::Compact, Method::CompactSymmetric, Method::Oracle}) {
    if (method_name(m) == name) return m;
  }
  throw Error(Errc::ParseError, "unknown method '" + std::string(name) + "'");
}

KunzCoordinates subtract(const KunzCoordinates& x, std::span<const Int> y) {
  if (y.size() != x.dimension()) throw Error(Errc::DimensionMismatch, "y has the wrong length");
  std::vector<Int> part(x.dimension());
  for (std::size_t i = 0; i < part.size(); ++i) part[i] = x.values()[i] - y[i];
  return KunzCoordinates(x.multiplicity(), std::move(part));
}

Decomposition make_decomposition(const KunzCoordinates& input, Method method, std::vector<KunzCoordinates> parts,
                                 bool minimal) {
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    const Int fa = frobenius(a), fb = frobenius(b);
    return fa != fb ? fa < fb : a < b;
  });
  const auto sg = special_gaps_above_m(input);
  std::vector<PartCertificate> certs;
  for (const auto& p : parts) {
    PartCertificate c{frobenius(p), {}};
    if (p.multiplicity() == input.multiplicity()) {
      for (Int h : sg) {
        if (covers_gap(p, h)) c.covered_gaps.push_back(h);
      }
    }
    certs.push_back(std::move(c));
  }
  return Decomposition{input, method, std::move(parts), std::move(certs), minimal};
}

Decomposition decompose_exact(const KunzCoordinates& x, const DecomposeOptions& options) {
  const auto sg = special_gaps_above_m(x);
  if (is_trivial(x, sg)) return finish(x, Method::Exact, {x}, true);
  const Int m = x.multiplicity();

  SolveLimits limits = options.limits;
  limits.max_solutions = options.max_optima_per_gap;
  std::vector<KunzCoordinates> pool;
  for (Int h : sg) {
    if (h < 2 * m) {
      pool.push_back(solutions_IPm(x, h));
      continue;
    }
    const auto model = build_IP_xh(x, h);
    const auto out = enumerate_optima(model.program, limits);
    if (out.status == SolveStatus::AbortedLimit) {
      limit_reached("enumerating optima for gap " + std::to_string(h) + " (try --method compact)", out);
    }
    if (out.status != SolveStatus::Optimal) throw Error(Errc::Internal, "IP(x," + std::to_string(h) + ") infeasible");
    for (const auto& y : *out.all_optima) pool.push_back(subtract(x, y));
  }
  return finish(x, Method::Exact, solve_cover(x, sg, std::move(pool), options), true);
}

Decomposition decompose_heuristic(const KunzCoordinates& x, const DecomposeOptions& options) {
  const auto sg = special_gaps_above_m(x);
  if (is_trivial(x, sg)) return finish(x, Method::Heuristic, {x}, false);
  const Int m = x.multiplicity();

  std::vector<KunzCoordinates> pool;
  for (Int h : sg) {
    if (h < 2 * m) {
      pool.push_back(solutions_IPm(x, h));
      continue;
    }
    const auto model = build_heuristic(x, h, sg);
    const auto out = solve(model.program, options.limits, WitnessPolicy::Canonical);
    if (out.status == SolveStatus::AbortedLimit) limit_reached("heuristic model for gap " + std::to_string(h), out);
    if (out.status != SolveStatus::Optimal) throw Error(Errc::Internal, "heuristic model infeasible");
    pool.push_back(subtract(x, y_part(out, x.dimension())));
  }
  if (sg.size() == 2) return finish(x, Method::Heuristic, std::move(pool), false);
  return finish(x, Method::Heuristic, solve_cover(x, sg, std::move(pool), options), false);
}

Decomposition decompose_compact(const KunzCoordinates& x, bool symmetric_only, const DecomposeOptions& options) {
  const Method method = symmetric_only ? Method::CompactSymmetric : Method::Compact;
  const auto sg = special_gaps_above_m(x);
  if (is_trivial(x, sg)) {
    if (symmetric_only && frobenius(x) % 2 == 0) {
      throw Error(Errc::NotSymmetricallyDecomposable, to_string(x) + " is irreducible with even Frobenius number");
    }
    return finish(x, method, {x}, true);
  }
  const auto model = build_compact(x, sg, symmetric_only ? PartRestriction::Symmetric : PartRestriction::None);
  const auto out = solve(model.program, options.limits, WitnessPolicy::Canonical);
  if (out.status == SolveStatus::AbortedLimit) limit_reached("compact model", out);
  if (out.status == SolveStatus::Infeasible) {
    if (symmetric_only) {
      throw Error(Errc::NotSymmetricallyDecomposable,
                  to_string(x) + " is not an intersection of semigroups with odd Frobenius number");
    }
    throw Error(Errc::Internal, "compact model infeasible");
  }
  return finish(x, method, decode_compact(x, model, out.witness), true);
}

Decomposition decompose_oracle(const KunzCoordinates& x, const DecomposeOptions& options) {
  const auto sg = special_gaps_above_m(x);
  if (x.is_all_ones()) return finish(x, Method::Oracle, {x}, true);
  if (sg.size() > 64) throw Error(Errc::OracleTooLarge, "more than 64 special gaps");
  const Int m = x.multiplicity();

  // Breadth-first over oversemigroups: each step adds one special gap.
  std::unordered_set<std::vector<Int>, KunzHash> seen;
  std::deque<std::vector<Int>> queue;
  std::vector<KunzCoordinates> irreducible;
  queue.emplace_back(x.values().begin(), x.values().end());
  seen.insert(queue.front());
  while (!queue.empty()) {
    const KunzCoordinates v(m, std::move(queue.front()));
    queue.pop_front();
    const auto sgv = special_gaps_above_m(v);
    if (sgv.size() == 1) irreducible.push_back(v);
    for (Int h : sgv) {
      std::vector<Int> child(v.values().begin(), v.values().end());
      --child[static_cast<std::size_t>(residue(h, m) - 1)];
      if (!is_kunz_vector(m, child)) continue;
      if (seen.insert(child).second) {
        if (seen.size() > options.oracle_max_nodes) {
          throw Error(Errc::OracleTooLarge, "more than " + std::to_string(options.oracle_max_nodes) +
                                                " oversemigroups of " + to_string(x));
        }
        queue.push_back(std::move(child));
      }
    }
  }

  // One candidate per coverage mask: the least genus, then the least vector.
  std::sort(irreducible.begin(), irreducible.end(), [](const auto& a, const auto& b) {
    const Int ga = genus(a), gb = genus(b);
    return ga != gb ? ga < gb : a < b;
  });
  std::vector<std::uint64_t> masks;
  std::vector<KunzCoordinates> cands;
  for (const auto& c : irreducible) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < sg.size(); ++i) {
      if (covers_gap(c, sg[i])) mask |= std::uint64_t{1} << i;
    }
    if (mask == 0 || std::find(masks.begin(), masks.end(), mask) != masks.end()) continue;
    masks.push_back(mask);
    cands.push_back(c);
  }

  const std::uint64_t full = sg.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << sg.size()) - 1;
  std::vector<std::size_t> chosen;
  // Depth-limited search branching on the candidates covering the lowest
  // uncovered gap.
  auto search = [&](auto&& self, std::uint64_t covered, std::size_t depth) -> bool {
    if (covered == full) return true;
    if (depth == 0) return false;
    const std::uint64_t bit = ~covered & full & (~(~covered & full) + 1);
    for (std::size_t c = 0; c < cands.size(); ++c) {
      if (!(masks[c] & bit)) continue;
      chosen.push_back(c);
      if (self(self, covered | masks[c], depth - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (std::size_t depth = 1; depth <= sg.size(); ++depth) {
    if (search(search, 0, depth)) {
      std::vector<KunzCoordinates> parts;
      for (std::size_t c : chosen) parts.push_back(cands[c]);
      return finish(x, Method::Oracle, std::move(parts), true);
    }
  }
  throw Error(Errc::Internal, "no oversemigroup cover found for " + to_string(x));
}

Decomposition decompose(const KunzCoordinates& x, Method method, const DecomposeOptions& options) {
  switch (method) {
    case Method::Exact: return decompose_exact(x, options);
    case Method::Heuristic: return decompose_heuristic(x, options);
    case Method::Compact: return decompose_compact(x, false, options);
    case Method::CompactSymmetric: return decompose_compact(x, true, options);
    case Method::Oracle: return decompose_oracle(x, options);
  }
  throw Error(Errc::Internal, "unknown method");
}

VerificationReport verify(const Decomposition& d) {
  VerificationReport report;
  const auto& x = d.input;
  const Int m = x.multiplicity();
  if (d.parts.empty()) {
    report.max_equals_input = false;
    report.failures.push_back("no parts");
  }
  bool same_m = true;
  for (const auto& p : d.parts) {
    const std::string name = to_string(p);
    if (p.multiplicity() != m) {
      report.parts_valid = same_m = false;
      report.failures.push_back("part " + name + " has multiplicity " + std::to_string(p.multiplicity()));
      continue;
    }
    if (!is_undercoordinate(p, x)) {
      report.parts_valid = false;
      report.failures.push_back("part " + name + " is not an oversemigroup of the input");
    }
    if (!is_m_irreducible(p)) {
      report.parts_irreducible = false;
      report.failures.push_back("part " + name + " is not m-irreducible");
    }
  }
  if (!d.parts.empty() && same_m && intersect(d.parts) != x) {
    report.max_equals_input = false;
    report.failures.push_back("intersection of the parts is " + to_string(intersect(d.parts)));
  }
  for (Int h : special_gaps_above_m(x)) {
    const Int k = residue(h, m);
    const bool covered = same_m && std::any_of(d.parts.begin(), d.parts.end(),
                                               [&](const auto& p) { return p.at(k) == x.at(k); });
    if (!covered) {
      report.special_gaps_covered = false;
      report.failures.push_back("special gap " + std::to_string(h) + " is not a gap of any part");
    }
  }
  return report;
}

}  // namespace nsdecomp
