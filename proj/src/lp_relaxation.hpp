#pragma once

// Linear relaxation used by the branch-and-bound to discard nodes whose box
// cannot meet all rows at once. Floating point finds the multipliers; the
// aggregated row they define is then checked in exact integer arithmetic, so
// a node is only ever discarded on a proof.

#include <cstdint>
#include <utility>
#include <vector>

#include "nsdecomp/semigroup.hpp"

namespace nsdecomp::detail {

using Wide = __int128;

struct LpRow {
  std::vector<std::pair<std::uint32_t, Wide>> terms;
  Wide lo;
  Wide hi;
};

class LpRelaxation {
 public:
  /// Rows whose coefficients or bounds are too large for the exact check
  /// are left out; the relaxation is then weaker, never wrong.
  LpRelaxation(std::size_t num_vars, const std::vector<const LpRow*>& rows, Wide infinity);

  /// False only when the box [lb, ub] provably has no point satisfying the
  /// rows (with the current bounds of the rows, read through `rows`).
  bool feasible(const std::vector<Int>& lb, const std::vector<Int>& ub);

  bool empty() const { return rows_.empty(); }

 private:
  bool certificate_holds(const std::vector<double>& u, const std::vector<Int>& lb, const std::vector<Int>& ub) const;
  void reset_basis();
  double lower(std::size_t id, const std::vector<Int>& lb) const;
  double upper(std::size_t id, const std::vector<Int>& ub) const;

  std::size_t n_;
  std::vector<const LpRow*> rows_;
  Wide inf_;
  std::vector<double> tab_;  // rows x n, basic_i = sum_j tab_ij * nonbasic_j
  std::vector<std::size_t> basic_, nonbasic_;
  std::vector<char> at_upper_;  // per nonbasic column
  std::uint64_t pivots_since_reset_ = 0;
};

}  // namespace nsdecomp::detail
