#include "nsdecomp/ilp_solver.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

#include "lp_relaxation.hpp"
#include "nsdecomp/error.hpp"

namespace nsdecomp {

namespace {

using Wide = __int128;
using Clock = std::chrono::steady_clock;

constexpr Wide kInf = Wide{1} << 120;
constexpr Wide kMaxObjectiveRange = Wide{1} << 100;
constexpr std::size_t kMaxCachedFailures = std::size_t{1} << 21;
constexpr Int kLpMinWidth = 16;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL + h;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return v ^ (v >> 31);
}

// 128-bit fingerprint of the subproblem left at a node: the XOR of one hash
// per free variable (with its domain) and one per row that still has free
// variables (with its residual bounds).
struct NodeKey {
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  void toggle(std::uint64_t id, Wide lo, Wide hi) {
    const auto lo0 = static_cast<std::uint64_t>(lo), lo1 = static_cast<std::uint64_t>(lo >> 64);
    const auto hi0 = static_cast<std::uint64_t>(hi), hi1 = static_cast<std::uint64_t>(hi >> 64);
    a ^= mix(id * 0x9e3779b97f4a7c15ULL + lo0 * 0xc2b2ae3d27d4eb4fULL + hi0 * 0x165667b19e3779f9ULL, lo1 ^ (hi1 << 7));
    b ^= mix(id * 0xd6e8feb86659fd93ULL + lo0 * 0xff51afd7ed558ccdULL + hi0 * 0xc4ceb9fe1a85ec53ULL, hi1 ^ (lo1 << 11));
  }

  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const noexcept { return static_cast<std::size_t>(k.a ^ (k.b << 1)); }
};

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

struct Row : detail::LpRow {
  Row() : detail::LpRow{{}, -kInf, kInf} {}
  bool active = true;
};

Wide oriented(Int coef, Sense sense) { return sense == Sense::Minimize ? Wide{coef} : -Wide{coef}; }

enum class Mode { Optimize, Collect, FirstLeaf };

struct Budget {
  const SolveLimits& limits;
  Clock::time_point start;
  std::uint64_t nodes = 0;
  bool exhausted = false;

  bool tick() {
    ++nodes;
    if (nodes > limits.max_nodes) exhausted = true;
    if (limits.max_seconds && (nodes & 255) == 0) {
      const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
      if (elapsed > *limits.max_seconds) exhausted = true;
    }
    return !exhausted;
  }

  double seconds() const { return std::chrono::duration<double>(Clock::now() - start).count(); }
};

// One depth-first search over the program with bounds propagation to a
// fixpoint at every node. The objective, when present, is an extra row whose
// upper bound follows the incumbent.
class Search {
 public:
  Search(const IntegerProgram& ip, Budget& budget, const std::vector<Wide>* objective)
      : ip_(ip), budget_(budget), n_(ip.num_vars()) {
    lb_.resize(n_);
    ub_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      lb_[v] = ip.variables[v].lower;
      ub_[v] = ip.variables[v].upper;
    }
    var_rows_.resize(n_);
    for (const auto& c : ip.constraints) {
      Row row;
      for (const auto& [v, a] : c.coefficients) {
        if (a != 0) row.terms.emplace_back(static_cast<std::uint32_t>(v), Wide{a});
      }
      if (c.relation != Relation::LessEq) row.lo = c.rhs;
      if (c.relation != Relation::GreaterEq) row.hi = c.rhs;
      add_row(std::move(row));
    }
    if (objective) {
      objective_ = *objective;
      Row row;
      for (std::size_t v = 0; v < n_; ++v) {
        if (objective_[v] != 0) row.terms.emplace_back(static_cast<std::uint32_t>(v), objective_[v]);
      }
      if (!row.terms.empty()) obj_row_ = add_row(std::move(row));
    }
    in_queue_.assign(rows_.size(), 0);
    trail_.reserve(4 * n_ + 64);
  }

  // Narrows a variable before run().
  void restrict_to(std::size_t v, Int lo, Int hi) {
    lb_[v] = std::max(lb_[v], lo);
    ub_[v] = std::min(ub_[v], hi);
  }

  void bound_objective(Wide lo, Wide hi) {
    if (obj_row_ == kNone) return;
    rows_[obj_row_].lo = lo;
    rows_[obj_row_].hi = hi;
  }

  void run(Mode mode, bool static_order) {
    mode_ = mode;
    for (std::size_t v = 0; v < n_; ++v) {
      if (lb_[v] > ub_[v]) return;
    }
    static_order_ = static_order;
    for (std::size_t r = 0; r < rows_.size(); ++r) enqueue(r);
    if (!propagate()) return;
    // Rows satisfied by every point of the root box can never fire again.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r == obj_row_) continue;
      const auto [lo, hi] = activity(rows_[r]);
      if (lo >= rows_[r].lo && hi <= rows_[r].hi) rows_[r].active = false;
    }
    start_tracking();
    if (budget_.limits.lp_relaxation && wide_domains()) {
      std::vector<const detail::LpRow*> active;
      for (const auto& row : rows_) {
        if (row.active) active.push_back(&row);
      }
      lp_.emplace(n_, active, kInf);
    }
    dfs();
  }

  bool found() const { return best_.has_value(); }
  Wide best_value() const { return *best_; }
  const std::vector<Int>& best_point() const { return best_point_; }
  std::vector<std::vector<Int>>& leaves() { return leaves_; }
  bool overflowed() const { return overflowed_; }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t add_row(Row row) {
    const std::size_t r = rows_.size();
    for (const auto& [v, a] : row.terms) var_rows_[v].emplace_back(static_cast<std::uint32_t>(r), a);
    rows_.push_back(std::move(row));
    return r;
  }

  std::pair<Wide, Wide> activity(const Row& row) const {
    Wide lo = 0, hi = 0;
    for (const auto& [v, a] : row.terms) {
      if (a > 0) {
        lo += a * lb_[v];
        hi += a * ub_[v];
      } else {
        lo += a * ub_[v];
        hi += a * lb_[v];
      }
    }
    return {lo, hi};
  }

  void enqueue(std::size_t r) {
    if (in_queue_[r] || !rows_[r].active) return;
    in_queue_[r] = 1;
    queue_.push_back(static_cast<std::uint32_t>(r));
  }

  void clear_queue() {
    for (std::size_t i = head_; i < queue_.size(); ++i) in_queue_[queue_[i]] = 0;
    queue_.clear();
    head_ = 0;
  }

  bool tighten(std::uint32_t v, Wide lo, Wide hi) {
    if (lo > ub_[v] || hi < lb_[v]) return false;
    const Int nlo = lo > lb_[v] ? static_cast<Int>(lo) : lb_[v];
    const Int nhi = hi < ub_[v] ? static_cast<Int>(hi) : ub_[v];
    if (nlo > nhi) return false;
    if (nlo == lb_[v] && nhi == ub_[v]) return true;
    trail_.push_back({v, lb_[v], ub_[v]});
    if (tracking_) toggle_var(v);
    lb_[v] = nlo;
    ub_[v] = nhi;
    if (tracking_) {
      if (nlo == nhi) {
        fix_rows(v, 1);
      } else {
        toggle_var(v);
      }
    }
    for (const auto& [r, a] : var_rows_[v]) enqueue(r);
    return true;
  }

  void toggle_var(std::uint32_t v) {
    if (lb_[v] != ub_[v]) key_.toggle(2 * std::uint64_t{v}, lb_[v], ub_[v]);
  }

  void toggle_row(std::size_t r) {
    const Row& row = rows_[r];
    if (!row.active || r == obj_row_ || open_[r] == 0) return;
    key_.toggle(2 * std::uint64_t{r} + 1, row.lo == -kInf ? -kInf : row.lo - fixed_sum_[r],
                row.hi == kInf ? kInf : row.hi - fixed_sum_[r]);
  }

  // Moves the fixed variable v into (sign 1) or out of (sign -1) the fixed
  // part of its rows.
  void fix_rows(std::uint32_t v, int sign) {
    for (const auto& [r, a] : var_rows_[v]) {
      toggle_row(r);
      fixed_sum_[r] += sign * a * lb_[v];
      open_[r] -= sign;
      toggle_row(r);
    }
  }

  void start_tracking() {
    fixed_sum_.assign(rows_.size(), 0);
    open_.assign(rows_.size(), 0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [v, a] : rows_[r].terms) {
        if (lb_[v] == ub_[v]) {
          fixed_sum_[r] += a * lb_[v];
        } else {
          ++open_[r];
        }
      }
    }
    key_ = {};
    for (std::uint32_t v = 0; v < n_; ++v) toggle_var(v);
    for (std::size_t r = 0; r < rows_.size(); ++r) toggle_row(r);
    tracking_ = true;
  }

  bool propagate() {
    if (obj_row_ != kNone) enqueue(obj_row_);
    while (head_ < queue_.size()) {
      const std::uint32_t r = queue_[head_++];
      in_queue_[r] = 0;
      const Row& row = rows_[r];
      const auto [min_act, max_act] = activity(row);
      if (min_act > row.hi || max_act < row.lo) {
        clear_queue();
        return false;
      }
      const bool use_hi = row.hi < kInf && max_act > row.hi;
      const bool use_lo = row.lo > -kInf && min_act < row.lo;
      if (!use_hi && !use_lo) continue;
      const Wide hi_slack = row.hi - min_act;
      const Wide lo_slack = max_act - row.lo;
      for (const auto& [v, a] : row.terms) {
        Wide lo = -kInf, hi = kInf;
        if (a > 0) {
          if (use_hi) hi = lb_[v] + floor_div(hi_slack, a);
          if (use_lo) lo = ub_[v] - floor_div(lo_slack, a);
        } else {
          if (use_hi) lo = ub_[v] - floor_div(hi_slack, -a);
          if (use_lo) hi = lb_[v] + floor_div(lo_slack, -a);
        }
        if (!tighten(v, lo, hi)) {
          clear_queue();
          return false;
        }
      }
    }
    clear_queue();
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto e = trail_.back();
      trail_.pop_back();
      if (tracking_) {
        if (lb_[e.var] == ub_[e.var]) {
          fix_rows(e.var, -1);
        } else {
          toggle_var(e.var);
        }
      }
      lb_[e.var] = e.lb;
      ub_[e.var] = e.ub;
      if (tracking_) toggle_var(e.var);
    }
    clear_queue();
  }

  std::size_t pick() const {
    std::size_t best = kNone;
    for (std::size_t v = 0; v < n_; ++v) {
      if (lb_[v] == ub_[v]) continue;
      if (static_order_) return v;
      if (best == kNone) {
        best = v;
        continue;
      }
      const auto& a = ip_.variables[v];
      const auto& b = ip_.variables[best];
      if (a.priority != b.priority) {
        if (a.priority > b.priority) best = v;
        continue;
      }
      if (ub_[v] - lb_[v] < ub_[best] - lb_[best]) best = v;
    }
    return best;
  }

  void leaf() {
    if (!is_feasible(ip_, lb_)) throw Error(Errc::Internal, "search produced an infeasible point");
    ++leaf_count_;
    switch (mode_) {
      case Mode::Optimize: {
        Wide value = 0;
        for (std::size_t v = 0; v < n_ && !objective_.empty(); ++v) value += objective_[v] * lb_[v];
        if (!best_ || value < *best_) {
          best_ = value;
          best_point_ = lb_;
        }
        if (obj_row_ == kNone) {
          stop_ = true;
        } else {
          rows_[obj_row_].hi = value - 1;
        }
        break;
      }
      case Mode::Collect:
        if (leaves_.size() >= budget_.limits.max_solutions) {
          overflowed_ = stop_ = true;
          return;
        }
        leaves_.push_back(lb_);
        if (!best_) best_ = 0;
        break;
      case Mode::FirstLeaf:
        best_ = 0;
        best_point_ = lb_;
        stop_ = true;
        break;
    }
  }

  // The subtree below a node depends on the fixed variables only through the
  // residual bounds of the rows that still have free variables. A subtree
  // that produced no leaf is remembered together with the objective window
  // it was searched under; a later node with the same residual problem and a
  // window inside that one is pruned.
  std::pair<Wide, Wide> objective_window() const {
    if (obj_row_ == kNone) return {-kInf, kInf};
    const Row& row = rows_[obj_row_];
    return {row.lo == -kInf ? -kInf : row.lo - fixed_sum_[obj_row_],
            row.hi == kInf ? kInf : row.hi - fixed_sum_[obj_row_]};
  }

  void dfs() {
    if (stop_) return;
    if (!budget_.tick()) {
      stop_ = true;
      return;
    }
    if (!propagate()) return;
    const std::size_t v = pick();
    if (v == kNone) {
      leaf();
      return;
    }
    const auto [obj_lo, obj_hi] = objective_window();
    const NodeKey key = key_;
    if (const auto it = failed_.find(key); it != failed_.end()) {
      if (obj_lo >= it->second.first && obj_hi <= it->second.second) return;
    }
    if (lp_ && use_lp()) {
      ++lp_calls_;
      if (!lp_->feasible(lb_, ub_)) {
        ++lp_prunes_;
        return;
      }
    }
    const std::uint64_t leaves_before = leaf_count_;

    const bool high = ip_.variables[v].prefer_high;
    const Int value = high ? ub_[v] : lb_[v];
    const std::size_t mark = trail_.size();
    if (tighten(static_cast<std::uint32_t>(v), value, value)) dfs();
    undo(mark);
    if (!stop_) {
      const bool ok = high ? tighten(static_cast<std::uint32_t>(v), lb_[v], Wide{value} - 1)
                           : tighten(static_cast<std::uint32_t>(v), Wide{value} + 1, ub_[v]);
      if (ok) dfs();
      undo(mark);
    }
    if (!stop_ && leaf_count_ == leaves_before && failed_.size() < kMaxCachedFailures) {
      failed_.insert_or_assign(key, std::pair{obj_lo, obj_hi});
    }
  }

  // Over narrow domains propagation alone is cheaper than the relaxation.
  bool wide_domains() const {
    for (std::size_t v = 0; v < n_; ++v) {
      if (ub_[v] - lb_[v] >= kLpMinWidth) return true;
    }
    return false;
  }

  // The relaxation costs far more than propagation; once it rarely prunes it
  // is only consulted at every 32nd node.
  bool use_lp() {
    ++lp_visits_;
    return lp_calls_ < 64 || 10 * lp_prunes_ >= lp_calls_ || lp_visits_ % 32 == 0;
  }

  struct TrailEntry {
    std::uint32_t var;
    Int lb;
    Int ub;
  };

  const IntegerProgram& ip_;
  Budget& budget_;
  std::size_t n_;
  std::vector<Int> lb_, ub_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::pair<std::uint32_t, Wide>>> var_rows_;
  std::vector<TrailEntry> trail_;
  std::vector<std::uint32_t> queue_;
  std::size_t head_ = 0;
  std::vector<char> in_queue_;
  std::vector<Wide> objective_;
  std::size_t obj_row_ = kNone;

  Mode mode_ = Mode::Optimize;
  bool static_order_ = false;
  bool stop_ = false;
  bool overflowed_ = false;
  std::optional<Wide> best_;
  std::vector<Int> best_point_;
  std::vector<std::vector<Int>> leaves_;
  std::uint64_t leaf_count_ = 0;
  std::unordered_map<NodeKey, std::pair<Wide, Wide>, NodeKeyHash> failed_;
  NodeKey key_;
  bool tracking_ = false;
  std::vector<Wide> fixed_sum_;
  std::vector<Int> open_;
  std::optional<detail::LpRelaxation> lp_;
  std::uint64_t lp_visits_ = 0, lp_calls_ = 0, lp_prunes_ = 0;
};

// Dense minimisation vector for the objective; with a tie-break the two are
// combined as W * primary + secondary, W exceeding the secondary's range.
std::vector<Wide> dense_objective(const IntegerProgram& ip, bool with_tie_break) {
  std::vector<Wide> out(ip.num_vars(), 0);
  for (const auto& [v, a] : ip.objective.coefficients) out[v] = oriented(a, ip.objective.sense);
  if (!with_tie_break || ip.tie_break.empty()) return out;

  Wide range = 0, primary_range = 0;
  for (const auto& [v, a] : ip.tie_break.coefficients) {
    const Wide span = ip.variables[v].upper - ip.variables[v].lower;
    range += (a < 0 ? -Wide{a} : Wide{a}) * span;
  }
  for (std::size_t v = 0; v < out.size(); ++v) {
    const Wide span = ip.variables[v].upper - ip.variables[v].lower;
    primary_range += (out[v] < 0 ? -out[v] : out[v]) * span;
  }
  const Wide weight = range + 1;
  if (range > kMaxObjectiveRange || primary_range > kMaxObjectiveRange / weight) {
    throw Error(Errc::MalformedModel, "objective and tie-break ranges too large to combine");
  }
  for (auto& a : out) a *= weight;
  for (const auto& [v, a] : ip.tie_break.coefficients) out[v] += oriented(a, ip.tie_break.sense);
  return out;
}

// Least optimum in the canonical order. Variables are fixed one at a time,
// each to the most preferred value for which an optimum still exists; every
// probe is a feasibility search with the usual branching order.
bool canonical_witness(const IntegerProgram& ip, Budget& budget, const std::vector<Wide>& objective, Wide value,
                       std::vector<Int>& point) {
  const std::size_t n = ip.num_vars();
  std::vector<Int> lo(n), hi(n);
  for (std::size_t v = 0; v < n; ++v) {
    lo[v] = ip.variables[v].lower;
    hi[v] = ip.variables[v].upper;
  }
  for (std::size_t v = 0; v < n; ++v) {
    const bool high = ip.variables[v].prefer_high;
    const Int step = high ? -1 : 1;
    for (Int t = high ? hi[v] : lo[v]; t != point[v]; t += step) {
      Search probe(ip, budget, &objective);
      for (std::size_t u = 0; u < n; ++u) probe.restrict_to(u, lo[u], hi[u]);
      probe.restrict_to(v, t, t);
      probe.bound_objective(value, value);
      probe.run(Mode::FirstLeaf, false);
      if (budget.exhausted) return false;
      if (probe.found()) {
        point = probe.best_point();
        break;
      }
    }
    lo[v] = hi[v] = point[v];
  }
  return true;
}

}  // namespace

std::string_view solve_status_name(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::AbortedLimit: return "AbortedLimit";
  }
  return "?";
}

Int evaluate(const Objective& objective, const std::vector<Int>& point) {
  Int value = 0;
  for (const auto& [v, a] : objective.coefficients) value += a * point[v];
  return value;
}

bool is_feasible(const IntegerProgram& ip, const std::vector<Int>& point) {
  if (point.size() != ip.num_vars()) return false;
  for (std::size_t v = 0; v < point.size(); ++v) {
    if (point[v] < ip.variables[v].lower || point[v] > ip.variables[v].upper) return false;
  }
  for (const auto& c : ip.constraints) {
    Wide lhs = 0;
    for (const auto& [v, a] : c.coefficients) lhs += Wide{a} * point[v];
    const bool ok = c.relation == Relation::LessEq      ? lhs <= c.rhs
                    : c.relation == Relation::GreaterEq ? lhs >= c.rhs
                                                        : lhs == c.rhs;
    if (!ok) return false;
  }
  return true;
}

bool canonical_less(const IntegerProgram& ip, const std::vector<Int>& a, const std::vector<Int>& b) {
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a[v] == b[v]) continue;
    return ip.variables[v].prefer_high ? a[v] > b[v] : a[v] < b[v];
  }
  return false;
}

SolveOutcome solve(const IntegerProgram& ip, const SolveLimits& limits, WitnessPolicy policy) {
  ip.validate();
  Budget budget{limits, Clock::now()};
  SolveOutcome out;
  const auto objective = dense_objective(ip, true);

  Search search(ip, budget, &objective);
  search.run(Mode::Optimize, false);
  if (budget.exhausted) {
    out.status = SolveStatus::AbortedLimit;
  } else if (!search.found()) {
    out.status = SolveStatus::Infeasible;
  } else {
    out.status = SolveStatus::Optimal;
    out.witness = search.best_point();
    if (policy == WitnessPolicy::Canonical) {
      if (!canonical_witness(ip, budget, objective, search.best_value(), out.witness)) {
        out.status = SolveStatus::AbortedLimit;
        out.witness.clear();
      }
    }
    if (out.status == SolveStatus::Optimal) out.objective_value = evaluate(ip.objective, out.witness);
  }
  out.stats = {budget.nodes, budget.seconds()};
  return out;
}

SolveOutcome enumerate_optima(const IntegerProgram& ip, const SolveLimits& limits) {
  ip.validate();
  Budget budget{limits, Clock::now()};
  SolveOutcome out;
  const auto objective = dense_objective(ip, false);

  Search search(ip, budget, &objective);
  search.run(Mode::Optimize, false);
  if (budget.exhausted || !search.found()) {
    out.status = budget.exhausted ? SolveStatus::AbortedLimit : SolveStatus::Infeasible;
    out.stats = {budget.nodes, budget.seconds()};
    return out;
  }

  Search collect(ip, budget, &objective);
  collect.bound_objective(search.best_value(), search.best_value());
  collect.run(Mode::Collect, false);
  if (budget.exhausted || collect.overflowed()) {
    out.status = SolveStatus::AbortedLimit;
  } else {
    auto optima = std::move(collect.leaves());
    std::sort(optima.begin(), optima.end(),
              [&](const auto& a, const auto& b) { return canonical_less(ip, a, b); });
    optima.erase(std::unique(optima.begin(), optima.end()), optima.end());
    out.status = SolveStatus::Optimal;
    out.witness = optima.front();
    out.objective_value = evaluate(ip.objective, out.witness);
    out.all_optima = std::move(optima);
  }
  out.stats = {budget.nodes, budget.seconds()};
  return out;
}

}  // namespace nsdecomp
