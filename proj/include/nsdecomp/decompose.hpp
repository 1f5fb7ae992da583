#pragma once

// Decomposition of a semigroup (given by Kunz coordinates) into
// m-irreducible oversemigroups of the same multiplicity.

#include <string>
#include <vector>

#include "nsdecomp/ilp_solver.hpp"
#include "nsdecomp/semigroup.hpp"

namespace nsdecomp {

enum class Method { Exact, Heuristic, Compact, CompactSymmetric, Oracle };

std::string_view method_name(Method method) noexcept;
/// Inverse of method_name; throws Error(ParseError).
Method parse_method(std::string_view name);

struct DecomposeOptions {
  SolveLimits limits;
  std::size_t max_optima_per_gap = 100'000;
  std::size_t oracle_max_nodes = 200'000;
};

struct PartCertificate {
  Int frobenius = 0;
  std::vector<Int> covered_gaps;  // elements of SG_m(input) that are gaps of the part

  friend bool operator==(const PartCertificate&, const PartCertificate&) = default;
};

struct Decomposition {
  KunzCoordinates input;
  Method method = Method::Exact;
  std::vector<KunzCoordinates> parts;  // ascending Frobenius number, then lexicographic
  std::vector<PartCertificate> certificates;
  bool minimal = false;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Orders the parts and fills in their certificates.
Decomposition make_decomposition(const KunzCoordinates& input, Method method, std::vector<KunzCoordinates> parts,
                                 bool minimal);

/// Per-gap enumeration of every minimum-length oversemigroup with Frobenius
/// number h, followed by an exact set cover. Minimal.
Decomposition decompose_exact(const KunzCoordinates& x, const DecomposeOptions& options = {});

/// One big-M coverage optimum per gap, followed by a set cover. Valid, not
/// necessarily minimal.
Decomposition decompose_heuristic(const KunzCoordinates& x, const DecomposeOptions& options = {});

/// A single compact program. With symmetric_only, only parts with odd
/// Frobenius number are allowed; throws Error(NotSymmetricallyDecomposable)
/// when no such decomposition exists.
Decomposition decompose_compact(const KunzCoordinates& x, bool symmetric_only = false,
                                const DecomposeOptions& options = {});

/// Brute force over the tree of oversemigroups reached by adding special
/// gaps one at a time, then a smallest cover by iterative deepening.
/// Throws Error(OracleTooLarge) past options.oracle_max_nodes.
Decomposition decompose_oracle(const KunzCoordinates& x, const DecomposeOptions& options = {});

Decomposition decompose(const KunzCoordinates& x, Method method, const DecomposeOptions& options = {});

struct VerificationReport {
  bool parts_valid = true;         // valid Kunz vectors, same m, below the input
  bool parts_irreducible = true;
  bool max_equals_input = true;
  bool special_gaps_covered = true;
  std::vector<std::string> failures;

  bool ok() const noexcept {
    return parts_valid && parts_irreducible && max_equals_input && special_gaps_covered;
  }
};

VerificationReport verify(const Decomposition& d);

/// Part x - y of a y-vector over the m - 1 coordinates.
KunzCoordinates subtract(const KunzCoordinates& x, std::span<const Int> y);

}  // namespace nsdecomp
