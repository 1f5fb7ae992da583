#include "lp_relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nsdecomp::detail {

namespace {

constexpr double kFeasTol = 1e-7;
constexpr double kPivotTol = 1e-9;
constexpr double kPriceTol = 1e-9;
constexpr double kHuge = std::numeric_limits<double>::infinity();
constexpr Wide kMaxCoef = Wide{1} << 30;
constexpr Wide kMaxBound = Wide{1} << 60;
constexpr double kMultiplierScale = double(1 << 24);
constexpr std::uint64_t kResetAfter = 20'000;

Wide abs_wide(Wide a) { return a < 0 ? -a : a; }

}  // namespace

LpRelaxation::LpRelaxation(std::size_t num_vars, const std::vector<const LpRow*>& rows, Wide infinity)
    : n_(num_vars), inf_(infinity) {
  for (const LpRow* row : rows) {
    bool ok = !row->terms.empty();
    for (const auto& [v, a] : row->terms) ok = ok && abs_wide(a) <= kMaxCoef;
    if (ok) rows_.push_back(row);
  }
  reset_basis();
}

void LpRelaxation::reset_basis() {
  const std::size_t m = rows_.size();
  tab_.assign(m * n_, 0.0);
  basic_.resize(m);
  nonbasic_.resize(n_);
  at_upper_.assign(n_, 0);
  for (std::size_t i = 0; i < m; ++i) {
    basic_[i] = n_ + i;
    for (const auto& [v, a] : rows_[i]->terms) tab_[i * n_ + v] += static_cast<double>(a);
  }
  for (std::size_t j = 0; j < n_; ++j) nonbasic_[j] = j;
  pivots_since_reset_ = 0;
}

// Bounds of a row are read live: the objective row changes with the incumbent.
double LpRelaxation::lower(std::size_t id, const std::vector<Int>& lb) const {
  if (id < n_) return static_cast<double>(lb[id]);
  const Wide lo = rows_[id - n_]->lo;
  return lo <= -inf_ || lo < -kMaxBound ? -kHuge : static_cast<double>(lo);
}

double LpRelaxation::upper(std::size_t id, const std::vector<Int>& ub) const {
  if (id < n_) return static_cast<double>(ub[id]);
  const Wide hi = rows_[id - n_]->hi;
  return hi >= inf_ || hi > kMaxBound ? kHuge : static_cast<double>(hi);
}

bool LpRelaxation::feasible(const std::vector<Int>& lb, const std::vector<Int>& ub) {
  const std::size_t m = rows_.size();
  if (m == 0) return true;
  if (pivots_since_reset_ > kResetAfter) reset_basis();

  std::vector<double> nb_val(n_), b_val(m), b_lo(m), b_hi(m), d(n_);
  std::vector<int> sigma(m);
  auto place = [&](std::size_t j) {
    const double lo = lower(nonbasic_[j], lb), hi = upper(nonbasic_[j], ub);
    if (at_upper_[j] && hi < kHuge) {
      nb_val[j] = hi;
    } else if (lo > -kHuge) {
      nb_val[j] = lo;
      at_upper_[j] = 0;
    } else {
      nb_val[j] = hi;
      at_upper_[j] = 1;
    }
  };
  for (std::size_t j = 0; j < n_; ++j) place(j);
  for (std::size_t i = 0; i < m; ++i) {
    b_lo[i] = lower(basic_[i], lb);
    b_hi[i] = upper(basic_[i], ub);
  }

  const std::size_t max_iter = 20 * (m + n_) + 100;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      const double* t = &tab_[i * n_];
      for (std::size_t j = 0; j < n_; ++j) s += t[j] * nb_val[j];
      b_val[i] = s;
      const double tol = kFeasTol * (1.0 + std::fabs(s));
      sigma[i] = s < b_lo[i] - tol ? -1 : s > b_hi[i] + tol ? 1 : 0;
      any = any || sigma[i] != 0;
    }
    if (!any) return true;

    std::fill(d.begin(), d.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (sigma[i] == 0) continue;
      const double* t = &tab_[i * n_];
      for (std::size_t j = 0; j < n_; ++j) d[j] += sigma[i] * t[j];
    }
    std::size_t enter = n_;
    double best = kPriceTol;
    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t id = nonbasic_[j];
      const double lo = lower(id, lb), hi = upper(id, ub);
      if (lo == hi) continue;
      const bool can_up = nb_val[j] < hi && d[j] < -best;
      const bool can_down = nb_val[j] > lo && d[j] > best;
      if (can_up || can_down) {
        best = std::fabs(d[j]);
        enter = j;
      }
    }
    if (enter == n_) {
      // Phase one is stuck with positive infeasibility: the multipliers of
      // the rows form the candidate proof.
      std::vector<double> u(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        if (basic_[i] >= n_) u[basic_[i] - n_] = sigma[i];
      }
      for (std::size_t j = 0; j < n_; ++j) {
        if (nonbasic_[j] >= n_) u[nonbasic_[j] - n_] = -d[j];
      }
      return !certificate_holds(u, lb, ub);
    }

    const double dir = d[enter] < 0 ? 1.0 : -1.0;
    const std::size_t eid = nonbasic_[enter];
    double step = upper(eid, ub) - lower(eid, lb);
    std::size_t leave = m;
    bool leave_at_upper = false;
    double leave_rate = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double rate = tab_[i * n_ + enter] * dir;
      if (std::fabs(rate) < kPivotTol) continue;
      double t = kHuge;
      bool to_upper = false;
      if (sigma[i] == 0) {
        if (rate > 0 && b_hi[i] < kHuge) {
          t = (b_hi[i] - b_val[i]) / rate;
          to_upper = true;
        } else if (rate < 0 && b_lo[i] > -kHuge) {
          t = (b_lo[i] - b_val[i]) / rate;
        }
      } else if (sigma[i] < 0 && rate > 0) {
        t = (b_lo[i] - b_val[i]) / rate;
      } else if (sigma[i] > 0 && rate < 0) {
        t = (b_hi[i] - b_val[i]) / rate;
        to_upper = true;
      }
      if (t < 0) t = 0;
      if (t < step || (t == step && leave < m && std::fabs(rate) > std::fabs(leave_rate))) {
        step = t;
        leave = i;
        leave_at_upper = to_upper;
        leave_rate = rate;
      }
    }
    if (leave == m) {
      if (step == kHuge) return true;
      at_upper_[enter] = dir > 0;
      place(enter);
      continue;
    }

    // Pivot: the entering column becomes basic in row `leave`.
    double* lrow = &tab_[leave * n_];
    const double piv = lrow[enter];
    for (std::size_t k = 0; k < n_; ++k) lrow[k] = k == enter ? 1.0 / piv : -lrow[k] / piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      double* t = &tab_[i * n_];
      const double f = t[enter];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < n_; ++k) {
        t[k] = k == enter ? f * lrow[k] : t[k] + f * lrow[k];
      }
    }
    std::swap(basic_[leave], nonbasic_[enter]);
    at_upper_[enter] = leave_at_upper;
    b_lo[leave] = lower(basic_[leave], lb);
    b_hi[leave] = upper(basic_[leave], ub);
    place(enter);
    ++pivots_since_reset_;
  }
  return true;
}

bool LpRelaxation::certificate_holds(const std::vector<double>& u, const std::vector<Int>& lb,
                                     const std::vector<Int>& ub) const {
  double top = 0.0;
  for (double x : u) top = std::max(top, std::fabs(x));
  if (top == 0.0 || !std::isfinite(top)) return false;
  const double scale = kMultiplierScale / top;

  std::vector<Wide> g(n_, 0);
  Wide lo_sum = 0, hi_sum = 0;
  bool lo_inf = false, hi_inf = false;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Wide w = static_cast<Wide>(std::llround(u[r] * scale));
    if (w == 0) continue;
    const LpRow& row = *rows_[r];
    for (const auto& [v, a] : row.terms) g[v] += w * a;
    const Wide lo = row.lo, hi = row.hi;
    const bool lo_open = lo <= -inf_ || lo < -kMaxBound, hi_open = hi >= inf_ || hi > kMaxBound;
    if (w > 0) {
      if (lo_open) lo_inf = true; else lo_sum += w * lo;
      if (hi_open) hi_inf = true; else hi_sum += w * hi;
    } else {
      if (hi_open) lo_inf = true; else lo_sum += w * hi;
      if (lo_open) hi_inf = true; else hi_sum += w * lo;
    }
  }
  // sum_r w_r (row r) = g . x lies in [lo_sum, hi_sum]; compare with its range over the box.
  Wide gmin = 0, gmax = 0;
  for (std::size_t v = 0; v < n_; ++v) {
    if (g[v] > 0) {
      gmin += g[v] * lb[v];
      gmax += g[v] * ub[v];
    } else if (g[v] < 0) {
      gmin += g[v] * ub[v];
      gmax += g[v] * lb[v];
    }
  }
  return (!lo_inf && gmax < lo_sum) || (!hi_inf && gmin > hi_sum);
}

}  // namespace nsdecomp::detail
