#pragma once

/**
 * @file semigroup.hpp
 * @brief Numerical semigroups of multiplicity m and their Kunz coordinates.
 *
 * A numerical semigroup S with multiplicity m is determined by its Apery set
 * Ap(S, m) = {w_0 = 0, w_1, ..., w_{m-1}}, where w_i is the least element of S
 * congruent to i mod m. Writing w_i = m * x_i + i gives the Kunz coordinates
 * x = (x_1, ..., x_{m-1}), a lattice point of the Kunz polytope:
 *
 *   x_i >= 1
 *   x_i + x_j - x_{i+j}   >=  0   for i <= j, i + j <  m
 *   x_i + x_j - x_{i+j-m} >= -1   for i <= j, i + j >  m
 *
 * Genus, Frobenius number, membership, gaps and special gaps are all cheap
 * functions of x. Indices exposed by this header are 1-based (x_1..x_{m-1});
 * a residue of 0 reads as the virtual coordinate x_0 = 0.
 */

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nsdecomp {

using Int = std::int64_t;

// Largest multiplicity / coordinate accepted, so that m * x_i + m fits in Int.
inline constexpr Int kMaxMultiplicity = 1'000'000;
inline constexpr Int kMaxCoordinate = 1'000'000'000'000;

/// Non-negative remainder n mod m.
constexpr Int residue(Int n, Int m) noexcept {
  const Int r = n % m;
  return r < 0 ? r + m : r;
}

constexpr Int ceil_half(Int n) noexcept { return n >= 0 ? (n + 1) / 2 : n / 2; }

/// A co-finite submonoid of (Z_{>=0}, +), stored by a generator list.
///
/// Construction sorts and deduplicates the generators and rejects lists
/// whose gcd differs from 1. The trivial semigroup <1> is accepted here;
/// everything that needs a multiplicity of at least 2 rejects it later.
class NumericalSemigroup {
 public:
  explicit NumericalSemigroup(std::vector<Int> generators);

  const std::vector<Int>& generators() const noexcept { return gens_; }
  Int multiplicity() const noexcept { return gens_.front(); }

  friend bool operator==(const NumericalSemigroup&, const NumericalSemigroup&) = default;

 private:
  std::vector<Int> gens_;
};

struct AperySet {
  Int m = 0;
  std::vector<Int> w;  // w[0] = 0, w[i] = least element congruent to i mod m
};

/// Validated Kunz-coordinate vector of a semigroup with multiplicity m >= 2.
class KunzCoordinates {
 public:
  /// Throws Error(DimensionMismatch) when x.size() != m - 1 and
  /// Error(InvalidKunz) when x is not a point of the Kunz polytope.
  KunzCoordinates(Int m, std::vector<Int> x);

  /// The vector (1, ..., 1): the semigroup {0, m, ->}.
  static KunzCoordinates all_ones(Int m);

  Int multiplicity() const noexcept { return m_; }
  std::size_t dimension() const noexcept { return x_.size(); }

  /// 1-based coordinate x_i, i in [1, m-1].
  Int at(Int i) const;
  /// Coordinate for a residue r in [0, m); residue 0 reads as 0.
  Int at_residue(Int r) const noexcept { return r == 0 ? 0 : x_[static_cast<std::size_t>(r - 1)]; }

  std::span<const Int> values() const noexcept { return x_; }
  bool is_all_ones() const noexcept;

  friend bool operator==(const KunzCoordinates&, const KunzCoordinates&) = default;
  friend auto operator<=>(const KunzCoordinates& a, const KunzCoordinates& b) {
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    return a.x_ <=> b.x_;
  }

 private:
  Int m_;
  std::vector<Int> x_;
};

std::string to_string(const KunzCoordinates& x);
std::string to_string(const NumericalSemigroup& s);

// Conversions.
AperySet apery_set(const NumericalSemigroup& s);
KunzCoordinates kunz_from_generators(const NumericalSemigroup& s);
/// Minimal generating system {m} U {m x_i + i} with redundant elements removed.
NumericalSemigroup generators_from_kunz(const KunzCoordinates& x);

/// Checks the Kunz-polytope inequalities for a raw vector. Throws
/// Error(DimensionMismatch) if x.size() != m - 1.
bool is_kunz_vector(Int m, std::span<const Int> x);

// Invariants read off the coordinates.
Int genus(const KunzCoordinates& x);
Int frobenius(const KunzCoordinates& x);
bool contains(const KunzCoordinates& x, Int n);
std::vector<Int> gaps(const KunzCoordinates& x);

/// Special gaps h > m, computed from the coordinates in O(m^2).
std::vector<Int> special_gaps_above_m(const KunzCoordinates& x);

/// genus(x) in {m - 1, m, ceil((F(x) + 1) / 2)}.
bool is_m_irreducible(const KunzCoordinates& x);

/// Componentwise maximum; the Kunz vector of the intersection.
KunzCoordinates intersect(std::span<const KunzCoordinates> xs);
KunzCoordinates intersect(const KunzCoordinates& a, const KunzCoordinates& b);

/// True iff x1 <= x componentwise (x1 is the coordinates of an oversemigroup).
bool is_undercoordinate(const KunzCoordinates& x1, const KunzCoordinates& x);

/// h is a gap of part, i.e. m * part_{k(h)} + k(h) >= h + 1. For an
/// undercoordinate of x and h in SG_m(x) this holds iff part_{k(h)} = x_{k(h)}.
bool covers_gap(const KunzCoordinates& part, Int h);

}  // namespace nsdecomp
