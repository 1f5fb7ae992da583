#pragma once

// Random instance generators and brute-force oracles shared by the tests.
// The oracles work on explicit element sets and never call the Kunz-based
// formulas they are used to check.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "nsdecomp/ilp_solver.hpp"
#include "nsdecomp/semigroup.hpp"

namespace testing {

using nsdecomp::Int;
using nsdecomp::KunzCoordinates;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  Int between(Int lo, Int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<Int>(gen_() % span);
  }

  bool coin() { return gen_() & 1; }

 private:
  std::mt19937_64 gen_;
};

// Valid Kunz vector with coordinates in [1, max_coord]: the semigroup
// generated by m and m v_i + i for a random v. Its coordinates are
// componentwise <= v.
inline KunzCoordinates random_kunz(Rng& rng, Int m, Int max_coord) {
  std::vector<Int> gens{m};
  for (Int i = 1; i < m; ++i) gens.push_back(m * rng.between(1, max_coord) + i);
  return nsdecomp::kunz_from_generators(nsdecomp::NumericalSemigroup(gens));
}

// Membership table of the semigroup generated by gens, for 0..limit.
inline std::vector<bool> elements_upto(const std::vector<Int>& gens, Int limit) {
  std::vector<bool> in(static_cast<std::size_t>(limit + 1), false);
  in[0] = true;
  for (Int n = 1; n <= limit; ++n) {
    for (Int g : gens) {
      if (g <= n && in[static_cast<std::size_t>(n - g)]) {
        in[static_cast<std::size_t>(n)] = true;
        break;
      }
    }
  }
  return in;
}

// Explicit semigroup description from a generator list, computed by closure.
struct BruteSemigroup {
  Int m = 0;
  Int frobenius = -1;
  std::vector<Int> gaps;
  std::vector<bool> in;  // membership up to `limit`
  Int limit = 0;

  bool contains(Int n) const { return n >= 0 && (n > limit || in[static_cast<std::size_t>(n)]); }
};

inline BruteSemigroup brute_semigroup(const std::vector<Int>& gens) {
  BruteSemigroup s;
  s.m = *std::min_element(gens.begin(), gens.end());
  // Once m consecutive elements appear every larger integer is in S.
  Int limit = 4 * s.m * (*std::max_element(gens.begin(), gens.end())) + 8;
  s.in = elements_upto(gens, limit);
  s.limit = limit;
  for (Int n = 1; n <= limit; ++n) {
    if (!s.in[static_cast<std::size_t>(n)]) {
      s.gaps.push_back(n);
      s.frobenius = n;
    }
  }
  return s;
}

inline std::vector<Int> kunz_generators(const KunzCoordinates& x) {
  std::vector<Int> gens{x.multiplicity()};
  for (Int i = 1; i < x.multiplicity(); ++i) gens.push_back(x.multiplicity() * x.at(i) + i);
  return gens;
}

inline BruteSemigroup brute_semigroup(const KunzCoordinates& x) { return brute_semigroup(kunz_generators(x)); }

// Raw vector check: the semigroup generated by m and m x_i + i has exactly
// these Apery elements.
inline bool brute_is_kunz(Int m, const std::vector<Int>& x) {
  for (Int v : x) {
    if (v < 1) return false;
  }
  std::vector<Int> gens{m};
  for (Int i = 1; i < m; ++i) gens.push_back(m * x[static_cast<std::size_t>(i - 1)] + i);
  const auto s = brute_semigroup(gens);
  for (Int i = 1; i < m; ++i) {
    const Int w = m * x[static_cast<std::size_t>(i - 1)] + i;
    if (s.contains(w - m)) return false;
  }
  return true;
}

// Special gaps h > m by definition: S u {h} is closed under addition.
inline std::vector<Int> brute_special_gaps(const BruteSemigroup& s) {
  std::vector<Int> out;
  for (Int h : s.gaps) {
    if (h <= s.m) continue;
    bool special = s.contains(2 * h);
    for (Int e = 1; e <= s.frobenius + 1 && special; ++e) {
      if (s.contains(e) && !s.contains(h + e)) special = false;
    }
    if (special) out.push_back(h);
  }
  return out;
}

// Every valid Kunz vector with m - 1 coordinates in [1, max_coord].
inline std::vector<KunzCoordinates> all_kunz(Int m, Int max_coord) {
  std::vector<KunzCoordinates> out;
  std::vector<Int> x(static_cast<std::size_t>(m - 1), 1);
  while (true) {
    if (nsdecomp::is_kunz_vector(m, x)) out.emplace_back(m, x);
    std::size_t i = 0;
    while (i < x.size() && x[i] == max_coord) x[i++] = 1;
    if (i == x.size()) break;
    ++x[i];
  }
  return out;
}

// All valid undercoordinates of x (oversemigroups of multiplicity m).
inline std::vector<KunzCoordinates> undercoordinates(const KunzCoordinates& x) {
  std::vector<KunzCoordinates> out;
  std::vector<Int> y(x.dimension(), 1);
  while (true) {
    if (nsdecomp::is_kunz_vector(x.multiplicity(), y)) out.emplace_back(x.multiplicity(), y);
    std::size_t i = 0;
    while (i < y.size() && y[i] == x.values()[i]) y[i++] = 1;
    if (i == y.size()) break;
    ++y[i];
  }
  return out;
}

// Not the intersection (componentwise max) of two strictly larger
// oversemigroups with the same multiplicity.
inline bool brute_is_m_irreducible(const KunzCoordinates& x) {
  auto unders = undercoordinates(x);
  std::erase(unders, x);
  for (std::size_t a = 0; a < unders.size(); ++a) {
    for (std::size_t b = a; b < unders.size(); ++b) {
      if (nsdecomp::intersect(unders[a], unders[b]) == x) return false;
    }
  }
  return true;
}

// Exhaustive search over the bounding box.
struct GridResult {
  bool feasible = false;
  Int value = 0;
  std::vector<std::vector<Int>> optima;  // canonical order
};

inline GridResult grid_solve(const nsdecomp::IntegerProgram& ip) {
  GridResult r;
  const std::size_t n = ip.num_vars();
  std::vector<Int> p(n);
  for (std::size_t v = 0; v < n; ++v) p[v] = ip.variables[v].lower;
  const bool maximize = ip.objective.sense == nsdecomp::Sense::Maximize;
  while (true) {
    if (nsdecomp::is_feasible(ip, p)) {
      const Int val = nsdecomp::evaluate(ip.objective, p);
      const bool better = !r.feasible || (maximize ? val > r.value : val < r.value);
      if (better) {
        r.optima.clear();
        r.value = val;
      }
      if (better || val == r.value) r.optima.push_back(p);
      r.feasible = true;
    }
    std::size_t v = 0;
    while (v < n && p[v] == ip.variables[v].upper) {
      p[v] = ip.variables[v].lower;
      ++v;
    }
    if (v == n) break;
    ++p[v];
  }
  std::sort(r.optima.begin(), r.optima.end(),
            [&](const auto& a, const auto& b) { return nsdecomp::canonical_less(ip, a, b); });
  return r;
}

inline std::uint64_t grid_size(const nsdecomp::IntegerProgram& ip) {
  std::uint64_t size = 1;
  for (const auto& v : ip.variables) size *= static_cast<std::uint64_t>(v.upper - v.lower + 1);
  return size;
}

// Random bounded program with a small box.
inline nsdecomp::IntegerProgram random_program(Rng& rng, std::uint64_t max_points) {
  using namespace nsdecomp;
  IntegerProgram ip;
  const Int n = rng.between(1, 6);
  std::uint64_t points = 1;
  for (Int v = 0; v < n; ++v) {
    const Int lo = rng.between(-3, 2);
    Int hi = lo + rng.between(0, 5);
    while (points * static_cast<std::uint64_t>(hi - lo + 1) > max_points && hi > lo) --hi;
    points *= static_cast<std::uint64_t>(hi - lo + 1);
    const bool binary = lo == 0 && hi == 1 && rng.coin();
    ip.add_variable("v" + std::to_string(v), lo, hi, binary ? VarKind::Binary : VarKind::Integer);
    ip.variables.back().prefer_high = rng.between(0, 4) == 0;
    ip.variables.back().priority = static_cast<int>(rng.between(0, 1));
  }
  const Int rows = rng.between(0, 5);
  for (Int r = 0; r < rows; ++r) {
    Coefficients c;
    const Int terms = rng.between(1, n);
    for (Int t = 0; t < terms; ++t) c[static_cast<std::size_t>(rng.between(0, n - 1))] = rng.between(-4, 4);
    const auto rel = static_cast<Relation>(rng.between(0, 2));
    ip.add_constraint(std::move(c), rel, rng.between(-6, 8));
  }
  if (rng.between(0, 5) > 0) {
    for (Int v = 0; v < n; ++v) {
      if (rng.coin()) ip.objective.coefficients[static_cast<std::size_t>(v)] = rng.between(-5, 5);
    }
    ip.objective.sense = rng.coin() ? Sense::Minimize : Sense::Maximize;
  }
  return ip;
}

// Smallest number of m-irreducible parts, from which sets of special gaps a
// single part can cover. For h > 2m, a part with Frobenius number h leaving
// the gaps C outside exists iff the semigroup generated by the input and
// {h - c : c in C, 2c != h} misses h, C and 1..m-1 (such a part must contain
// h - c; conversely that semigroup plus every x > h/2 with h - x outside it
// is one). For m < h < 2m the only part is 1 + e_k, which covers h alone.
// Works on Apery sets, so coordinates may be large. Returns 0 when more than
// max_sets coverage sets turn up.
inline std::size_t coverage_min_size(const KunzCoordinates& x, std::size_t max_sets = 200'000) {
  const Int m = x.multiplicity();
  const auto sg = nsdecomp::special_gaps_above_m(x);
  if (x.is_all_ones() || sg.size() <= 1) return 1;
  const std::size_t s = sg.size();
  std::vector<Int> base(static_cast<std::size_t>(m), 0);
  for (Int i = 1; i < m; ++i) base[static_cast<std::size_t>(i)] = m * x.at(i) + i;

  // Apery set after adding generator g.
  auto add_generator = [m](std::vector<Int> w, Int g) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Int r = 0; r < m; ++r) {
        // Walk each residue cycle of r -> r + g twice so every chain settles.
        Int cur = r;
        for (Int t = 0; t < m; ++t) {
          const Int next = (cur + g) % m;
          w[static_cast<std::size_t>(next)] = std::min(w[static_cast<std::size_t>(next)], w[static_cast<std::size_t>(cur)] + g);
          cur = next;
        }
      }
    }
    return w;
  };
  auto member = [m](const std::vector<Int>& w, Int n) { return n >= w[static_cast<std::size_t>(n % m)]; };

  std::vector<std::uint64_t> sets;
  bool overflow = false;
  for (std::size_t j = 0; j < s && !overflow; ++j) {
    const Int h = sg[j];
    if (h < 2 * m) {
      sets.push_back(std::uint64_t{1} << j);
      continue;
    }
    std::function<void(std::size_t, std::uint64_t, const std::vector<Int>&)> grow =
        [&](std::size_t from, std::uint64_t mask, const std::vector<Int>& w) {
          bool extended = false;
          for (std::size_t c = 0; c < j && !overflow; ++c) {
            if (mask >> c & 1) continue;
            const Int gap = sg[c];
            auto next = 2 * gap == h ? w : add_generator(w, h - gap);
            bool ok = !member(next, h);
            for (Int i = 1; i < m && ok; ++i) ok = !member(next, i);
            for (std::size_t d = 0; d < j && ok; ++d) {
              if ((mask >> d & 1) || d == c) ok = !member(next, sg[d]);
            }
            if (!ok) continue;
            extended = true;
            if (c >= from) grow(c + 1, mask | std::uint64_t{1} << c, next);
          }
          if (!extended) {
            sets.push_back(mask);
            if (sets.size() > max_sets) overflow = true;
          }
        };
    grow(0, std::uint64_t{1} << j, base);
  }
  if (overflow) return 0;
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

  const std::uint64_t all = s == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s) - 1;
  std::function<bool(std::uint64_t, std::size_t)> cover = [&](std::uint64_t covered, std::size_t left) {
    if (covered == all) return true;
    if (left == 0) return false;
    const auto lowest = static_cast<std::size_t>(std::countr_one(covered));
    for (std::uint64_t set : sets) {
      if ((set >> lowest & 1) && cover(covered | set, left - 1)) return true;
    }
    return false;
  };
  for (std::size_t r = 1;; ++r) {
    if (cover(0, r)) return r;
  }
}

}  // namespace testing
