#include "nsdecomp/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "nsdecomp/error.hpp"

namespace nsdecomp {

namespace {

void require_same_multiplicity(const KunzCoordinates& a, const KunzCoordinates& b) {
  if (a.multiplicity() != b.multiplicity()) {
    throw Error(Errc::MultiplicityMismatch, "multiplicities " + std::to_string(a.multiplicity()) +
                                                " and " + std::to_string(b.multiplicity()));
  }
}

void require_multiplicity_range(Int m) {
  if (m < 2 || m > kMaxMultiplicity) {
    throw Error(Errc::InvalidKunz, "multiplicity " + std::to_string(m) + " outside [2, " +
                                       std::to_string(kMaxMultiplicity) + "]");
  }
}

}  // namespace

NumericalSemigroup::NumericalSemigroup(std::vector<Int> generators) : gens_(std::move(generators)) {
  if (gens_.empty()) throw Error(Errc::InvalidGenerators, "generator list is empty");
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
  if (gens_.front() < 1) {
    throw Error(Errc::InvalidGenerators, "generators must be positive, got " + std::to_string(gens_.front()));
  }
  if (gens_.front() > kMaxMultiplicity) {
    throw Error(Errc::InvalidGenerators, "multiplicity " + std::to_string(gens_.front()) + " too large");
  }
  Int g = 0;
  for (Int v : gens_) g = std::gcd(g, v);
  if (g != 1) throw Error(Errc::GcdNotOne, "gcd of generators is " + std::to_string(g));
  if (gens_.front() == 1) gens_ = {1};
}

KunzCoordinates::KunzCoordinates(Int m, std::vector<Int> x) : m_(m), x_(std::move(x)) {
  require_multiplicity_range(m);
  if (static_cast<Int>(x_.size()) != m - 1) {
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(m - 1) + " coordinates, got " +
                                             std::to_string(x_.size()));
  }
  for (Int v : x_) {
    if (v > kMaxCoordinate) throw Error(Errc::InvalidKunz, "coordinate " + std::to_string(v) + " too large");
  }
  if (!is_kunz_vector(m, x_)) throw Error(Errc::InvalidKunz, to_string(*this) + " violates the Kunz inequalities");
}

KunzCoordinates KunzCoordinates::all_ones(Int m) {
  require_multiplicity_range(m);
  return KunzCoordinates(m, std::vector<Int>(static_cast<std::size_t>(m - 1), 1));
}

Int KunzCoordinates::at(Int i) const {
  if (i < 1 || i > m_ - 1) {
    throw Error(Errc::IndexOutOfRange, "coordinate index " + std::to_string(i) + " outside [1, " +
                                           std::to_string(m_ - 1) + "]");
  }
  return x_[static_cast<std::size_t>(i - 1)];
}

bool KunzCoordinates::is_all_ones() const noexcept {
  return std::all_of(x_.begin(), x_.end(), [](Int v) { return v == 1; });
}

std::string to_string(const KunzCoordinates& x) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < x.dimension(); ++i) out << (i ? "," : "") << x.values()[i];
  out << ')';
  return out.str();
}

std::string to_string(const NumericalSemigroup& s) {
  std::ostringstream out;
  out << '<';
  for (std::size_t i = 0; i < s.generators().size(); ++i) out << (i ? "," : "") << s.generators()[i];
  out << '>';
  return out.str();
}

// Shortest paths on the residues mod m: an edge r -> r + g of weight g per
// generator g. The distance to r is the least element of S congruent to r.
AperySet apery_set(const NumericalSemigroup& s) {
  const Int m = s.multiplicity();
  if (m == 1) throw Error(Errc::TrivialSemigroup, "the semigroup <1> has no Apery set of multiplicity >= 2");

  constexpr Int kUnset = -1;
  AperySet ap{m, std::vector<Int>(static_cast<std::size_t>(m), kUnset)};
  ap.w[0] = 0;
  using Entry = std::pair<Int, Int>;  // (distance, residue)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.emplace(0, 0);
  while (!heap.empty()) {
    const auto [d, r] = heap.top();
    heap.pop();
    if (d > ap.w[static_cast<std::size_t>(r)]) continue;
    for (Int g : s.generators()) {
      if (g == m) continue;
      const Int next = (r + g) % m;
      const Int nd = d + g;
      Int& slot = ap.w[static_cast<std::size_t>(next)];
      if (slot == kUnset || nd < slot) {
        slot = nd;
        heap.emplace(nd, next);
      }
    }
  }
  // gcd = 1 guarantees every residue is reached.
  return ap;
}

KunzCoordinates kunz_from_generators(const NumericalSemigroup& s) {
  const AperySet ap = apery_set(s);
  std::vector<Int> x(static_cast<std::size_t>(ap.m - 1));
  for (Int i = 1; i < ap.m; ++i) x[static_cast<std::size_t>(i - 1)] = (ap.w[static_cast<std::size_t>(i)] - i) / ap.m;
  return KunzCoordinates(ap.m, std::move(x));
}

// w_i is redundant iff it is the sum of two non-zero elements of S, and then
// both summands are Apery elements (otherwise w_i - m would lie in S).
NumericalSemigroup generators_from_kunz(const KunzCoordinates& x) {
  const Int m = x.multiplicity();
  std::vector<Int> gens{m};
  for (Int i = 1; i < m; ++i) {
    const Int wi = m * x.at_residue(i) + i;
    bool redundant = false;
    for (Int j = 1; j < m && !redundant; ++j) {
      if (j == i) continue;
      const Int wj = m * x.at_residue(j) + j;
      redundant = wj < wi && contains(x, wi - wj);
    }
    if (!redundant) gens.push_back(wi);
  }
  return NumericalSemigroup(std::move(gens));
}

bool is_kunz_vector(Int m, std::span<const Int> x) {
  if (m < 2) throw Error(Errc::DimensionMismatch, "multiplicity must be at least 2");
  if (static_cast<Int>(x.size()) != m - 1) {
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(m - 1) + " coordinates, got " +
                                             std::to_string(x.size()));
  }
  auto at = [&](Int i) { return x[static_cast<std::size_t>(i - 1)]; };
  for (Int i = 1; i < m; ++i) {
    if (at(i) < 1) return false;
  }
  for (Int i = 1; i < m; ++i) {
    for (Int j = i; j < m; ++j) {
      if (i + j < m && at(i) + at(j) - at(i + j) < 0) return false;
      if (i + j > m && at(i) + at(j) - at(i + j - m) < -1) return false;
    }
  }
  return true;
}

Int genus(const KunzCoordinates& x) {
  Int g = 0;
  for (Int v : x.values()) g += v;
  return g;
}

Int frobenius(const KunzCoordinates& x) {
  const Int m = x.multiplicity();
  Int best = 0;
  for (Int i = 1; i < m; ++i) best = std::max(best, m * x.at_residue(i) + i);
  return best - m;
}

bool contains(const KunzCoordinates& x, Int n) {
  if (n < 0) return false;
  const Int m = x.multiplicity();
  const Int r = n % m;
  if (r == 0) return true;
  return m * x.at_residue(r) + r <= n;
}

std::vector<Int> gaps(const KunzCoordinates& x) {
  std::vector<Int> out;
  const Int f = frobenius(x);
  out.reserve(static_cast<std::size_t>(genus(x)));
  for (Int n = 1; n <= f; ++n) {
    if (!contains(x, n)) out.push_back(n);
  }
  return out;
}

// Candidate h_i = m (x_i - 1) + i survives when no other Apery element w_j
// has w_i - w_j in Ap, i.e. x_i + x_j > x_{i+j} (i + j < m) and
// x_i + x_j > x_{i+j-m} - 1 (i + j > m); finally 2h must lie in S.
std::vector<Int> special_gaps_above_m(const KunzCoordinates& x) {
  const Int m = x.multiplicity();
  std::vector<Int> out;
  for (Int i = 1; i < m; ++i) {
    const Int xi = x.at_residue(i);
    bool in_m1 = true;
    bool in_m2 = true;
    for (Int j = 1; j < m && (in_m1 || in_m2); ++j) {
      const Int xj = x.at_residue(j);
      if (i + j < m && !(xi + xj > x.at_residue(i + j))) in_m1 = false;
      if (i + j > m && !(xi + xj > x.at_residue(i + j - m) - 1)) in_m2 = false;
    }
    if (!in_m1 || !in_m2) continue;
    const Int z = m * (xi - 1) + i;
    if (z <= m) continue;
    const Int k2 = residue(2 * z, m);
    if (2 * z >= m * x.at_residue(k2) + k2) out.push_back(z);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_m_irreducible(const KunzCoordinates& x) {
  const Int m = x.multiplicity();
  const Int g = genus(x);
  return g == m - 1 || g == m || g == ceil_half(frobenius(x) + 1);
}

KunzCoordinates intersect(std::span<const KunzCoordinates> xs) {
  if (xs.empty()) throw Error(Errc::EmptyInput, "intersection of an empty family");
  std::vector<Int> out(xs.front().values().begin(), xs.front().values().end());
  for (const auto& x : xs.subspan(1)) {
    require_same_multiplicity(xs.front(), x);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], x.values()[i]);
  }
  return KunzCoordinates(xs.front().multiplicity(), std::move(out));
}

KunzCoordinates intersect(const KunzCoordinates& a, const KunzCoordinates& b) {
  const KunzCoordinates pair[] = {a, b};
  return intersect(std::span<const KunzCoordinates>(pair));
}

bool is_undercoordinate(const KunzCoordinates& x1, const KunzCoordinates& x) {
  require_same_multiplicity(x1, x);
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    if (x1.values()[i] > x.values()[i]) return false;
  }
  return true;
}

bool covers_gap(const KunzCoordinates& part, Int h) { return h > 0 && !contains(part, h); }

}  // namespace nsdecomp
