#pragma once

// Exact depth-first branch-and-bound for small bounded integer programs.

#include <cstdint>
#include <optional>
#include <vector>

#include "nsdecomp/ip_model.hpp"

namespace nsdecomp {

struct SolveLimits {
  std::uint64_t max_nodes = 10'000'000;
  std::optional<double> max_seconds;
  std::size_t max_solutions = 100'000;  // enumerate_optima only
  bool lp_relaxation = true;            // prune nodes whose linear relaxation is empty
};

enum class SolveStatus { Optimal, Infeasible, AbortedLimit };

std::string_view solve_status_name(SolveStatus status) noexcept;

struct SolveStats {
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Int> objective_value;  // primary objective, in its own sense
  std::vector<Int> witness;
  std::optional<std::vector<std::vector<Int>>> all_optima;
  SolveStats stats;
};

enum class WitnessPolicy {
  Any,        // whatever optimum the search meets first
  Canonical,  // least optimum in the canonical order (see enumerate_optima)
};

/// Optimises the objective, then the tie-break objective among its optima.
SolveOutcome solve(const IntegerProgram& ip, const SolveLimits& limits = {},
                   WitnessPolicy policy = WitnessPolicy::Any);

/// Every feasible point attaining the optimal primary objective value,
/// sorted lexicographically by variable index (descending for variables that
/// prefer high values). The witness is the first of them. The tie-break
/// objective is ignored.
SolveOutcome enumerate_optima(const IntegerProgram& ip, const SolveLimits& limits = {});

/// Canonical ordering used by enumerate_optima.
bool canonical_less(const IntegerProgram& ip, const std::vector<Int>& a, const std::vector<Int>& b);

/// Checks every constraint and bound exactly.
bool is_feasible(const IntegerProgram& ip, const std::vector<Int>& point);

Int evaluate(const Objective& objective, const std::vector<Int>& point);

}  // namespace nsdecomp
