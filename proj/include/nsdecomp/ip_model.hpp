#pragma once

// Solver-agnostic integer programs and the builders for every model used by
// the decomposition pipelines.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsdecomp/semigroup.hpp"

namespace nsdecomp {

enum class Relation { LessEq, GreaterEq, Equal };
enum class VarKind { Integer, Binary };
enum class Sense { Minimize, Maximize };

using Coefficients = std::map<std::size_t, Int>;

struct LinearConstraint {
  Coefficients coefficients;
  Relation relation = Relation::LessEq;
  Int rhs = 0;
  std::string name;
};

struct Variable {
  std::string name;
  Int lower = 0;
  Int upper = 0;
  VarKind kind = VarKind::Integer;
  // Search hints. Higher priority variables are branched on first; a variable
  // with prefer_high tries its largest value first and orders canonical
  // optima by descending value.
  int priority = 0;
  bool prefer_high = false;
};

struct Objective {
  Coefficients coefficients;
  Sense sense = Sense::Minimize;

  bool empty() const noexcept { return coefficients.empty(); }
};

struct IntegerProgram {
  std::vector<Variable> variables;
  std::vector<LinearConstraint> constraints;
  Objective objective;
  // Secondary objective, optimised among the optima of the primary one.
  Objective tie_break;

  std::size_t num_vars() const noexcept { return variables.size(); }

  std::size_t add_variable(std::string name, Int lower, Int upper, VarKind kind = VarKind::Integer);
  void add_constraint(Coefficients coefficients, Relation relation, Int rhs, std::string name = {});

  /// Throws Error(MalformedModel) on dangling indices, empty rows, inverted or
  /// non-binary bounds on binary variables.
  void validate() const;
};

enum class ModelKind { Pk, IpXh, IpmXh, Heuristic, SetCover, Compact, CompactSymmetric, CompactPseudosymmetric };

std::string_view model_kind_name(ModelKind kind) noexcept;

struct VarBlock {
  std::string name;
  std::size_t offset = 0;
  std::size_t size = 0;
};

struct ModelMeta {
  ModelKind kind = ModelKind::Pk;
  Int m = 0;
  std::optional<Int> gap;           // fixed special gap h, per-gap models only
  std::optional<Int> k;             // Frobenius residue, P_k only
  std::vector<Int> special_gaps;    // h_1..h_s for Heuristic / SetCover / Compact
  std::vector<VarBlock> blocks;     // partition of [0, num_vars)
  std::optional<Int> big_m;
  std::vector<KunzCoordinates> candidates;  // SetCover only, after dedupe

  const VarBlock& block(std::string_view name) const;
};

struct KunzModel {
  IntegerProgram program;
  ModelMeta meta;
};

/// P_k^m(x) in its linear two-inequality form; feasibility only.
KunzModel build_Pk(const KunzCoordinates& x, Int k);

/// IP^m(x, h) for h in SG_m(x), h > 2m: P_{k(h)} with y_{k(h)} = 0, minimise sum y.
KunzModel build_IP_xh(const KunzCoordinates& x, Int h);

/// IP_m^m(x, h) for h in SG_m(x), m < h < 2m: P_m^m(x) with y_{k(h)} = x_{k(h)} - 2.
KunzModel build_IPm_xh(const KunzCoordinates& x, Int h);

/// Closed-form optimum of IP_m^m(x, h): the undercoordinate 1 + e_{k(h)}.
KunzCoordinates solutions_IPm(const KunzCoordinates& x, Int h);

/// Big-M coverage model: IP^m(x, h)'s region plus one binary per special gap,
/// maximising the number of special gaps that stay gaps of x - y.
KunzModel build_heuristic(const KunzCoordinates& x, Int h, const std::vector<Int>& special_gaps);

/// Set covering over candidate undercoordinates. Candidates are deduplicated
/// (first occurrence kept). The tie-break objective prefers covers with the
/// smallest total genus.
KunzModel build_set_cover(const KunzCoordinates& x, const std::vector<Int>& special_gaps,
                          const std::vector<KunzCoordinates>& candidates);

enum class PartRestriction { None, Symmetric, Pseudosymmetric };

/// The compact model: s = |special_gaps| y-blocks, selection binaries w,
/// gap-assignment binaries a (block l takes gap j), coverage binaries z and
/// prefix coverage binaries c (gap k is covered by one of blocks 1..l).
/// With a restriction, gaps of the excluded parity cannot be assigned.
KunzModel build_compact(const KunzCoordinates& x, const std::vector<Int>& special_gaps,
                        PartRestriction restriction = PartRestriction::None);

/// Part x - y^l for every active block of a compact-model solution.
std::vector<KunzCoordinates> decode_compact(const KunzCoordinates& x, const KunzModel& model,
                                            const std::vector<Int>& solution);

/// Writes the program in CPLEX LP text format.
std::string to_lp_format(const IntegerProgram& ip, const std::string& comment = {});

}  // namespace nsdecomp
