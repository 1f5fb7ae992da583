#include "doctest.h"

#include "nsdecomp/error.hpp"
#include "nsdecomp/ilp_solver.hpp"
#include "support.hpp"

using namespace nsdecomp;

namespace {

// Grid optima of the primary objective, narrowed by the tie-break objective.
std::vector<std::vector<Int>> grid_tie_broken(const IntegerProgram& ip, const testing::GridResult& g) {
  if (g.optima.empty()) return {};
  const bool maximize = ip.tie_break.sense == Sense::Maximize;
  Int best = evaluate(ip.tie_break, g.optima.front());
  for (const auto& p : g.optima) {
    const Int v = evaluate(ip.tie_break, p);
    if (maximize ? v > best : v < best) best = v;
  }
  std::vector<std::vector<Int>> out;
  for (const auto& p : g.optima) {
    if (evaluate(ip.tie_break, p) == best) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("solve: matches exhaustive search on random programs") {
  testing::Rng rng(41);
  int feasible = 0;
  for (int t = 0; t < 1500; ++t) {
    auto ip = testing::random_program(rng, 4000);
    if (rng.coin()) {
      for (std::size_t v = 0; v < ip.num_vars(); ++v) {
        if (rng.coin()) ip.tie_break.coefficients[v] = rng.between(-3, 3);
      }
      ip.tie_break.sense = rng.coin() ? Sense::Minimize : Sense::Maximize;
    }
    const auto grid = testing::grid_solve(ip);

    const auto any = solve(ip);
    const auto canon = solve(ip, {}, WitnessPolicy::Canonical);
    const auto all = enumerate_optima(ip);
    if (!grid.feasible) {
      CHECK(any.status == SolveStatus::Infeasible);
      CHECK(canon.status == SolveStatus::Infeasible);
      CHECK(all.status == SolveStatus::Infeasible);
      continue;
    }
    ++feasible;
    REQUIRE(any.status == SolveStatus::Optimal);
    CHECK(*any.objective_value == grid.value);
    CHECK(is_feasible(ip, any.witness));

    const auto tied = grid_tie_broken(ip, grid);
    CHECK(std::find(tied.begin(), tied.end(), any.witness) != tied.end());
    REQUIRE(canon.status == SolveStatus::Optimal);
    CHECK(canon.witness == tied.front());

    REQUIRE(all.status == SolveStatus::Optimal);
    CHECK(*all.objective_value == grid.value);
    CHECK(*all.all_optima == grid.optima);
    CHECK(all.witness == grid.optima.front());
  }
  CHECK(feasible > 300);
}

TEST_CASE("solve: linear relaxation on wide domains matches exhaustive search") {
  testing::Rng rng(47);
  int pruned_models = 0;
  for (int t = 0; t < 400; ++t) {
    IntegerProgram ip;
    const Int n = rng.between(2, 4);
    const Int width = n == 2 ? 200 : n == 3 ? 40 : 16;
    for (Int v = 0; v < n; ++v) {
      const Int lo = rng.between(-10, 5);
      ip.add_variable("v" + std::to_string(v), lo, lo + rng.between(16, width));
      ip.variables.back().prefer_high = rng.coin();
    }
    for (Int r = rng.between(2, 6); r > 0; --r) {
      Coefficients c;
      for (Int v = 0; v < n; ++v) c[static_cast<std::size_t>(v)] = rng.between(-9, 9);
      ip.add_constraint(std::move(c), static_cast<Relation>(rng.between(0, 2)), rng.between(-60, 60));
    }
    for (Int v = 0; v < n; ++v) ip.objective.coefficients[static_cast<std::size_t>(v)] = rng.between(-4, 4);
    ip.objective.sense = rng.coin() ? Sense::Minimize : Sense::Maximize;

    const auto grid = testing::grid_solve(ip);
    SolveLimits plain;
    plain.lp_relaxation = false;
    const auto with_lp = enumerate_optima(ip);
    const auto without = enumerate_optima(ip, plain);
    if (with_lp.stats.nodes < without.stats.nodes) ++pruned_models;
    if (!grid.feasible) {
      CHECK(with_lp.status == SolveStatus::Infeasible);
      CHECK(solve(ip).status == SolveStatus::Infeasible);
      continue;
    }
    REQUIRE(with_lp.status == SolveStatus::Optimal);
    CHECK(*with_lp.all_optima == grid.optima);
    CHECK(*without.all_optima == grid.optima);
    const auto canon = solve(ip, {}, WitnessPolicy::Canonical);
    REQUIRE(canon.status == SolveStatus::Optimal);
    CHECK(canon.witness == grid.optima.front());
  }
  MESSAGE("relaxation saved nodes on " << pruned_models << " of 400 programs");
  CHECK(pruned_models > 0);
}

TEST_CASE("solve: linear relaxation on a model with large coordinates") {
  // <18,743,3102>: coordinates in the hundreds, gaps 6799 and 8155.
  const auto x = kunz_from_generators(NumericalSemigroup({18, 743, 3102}));
  const auto model = build_IP_xh(x, 8155);
  const auto fast = solve(model.program);
  REQUIRE(fast.status == SolveStatus::Optimal);
  CHECK(fast.stats.nodes < 100);
  CHECK(*fast.objective_value == genus(x) - ceil_half(8155 + 1));
  SolveLimits plain;
  plain.lp_relaxation = false;
  const auto a = enumerate_optima(model.program);
  const auto b = enumerate_optima(model.program, plain);
  REQUIRE(a.status == SolveStatus::Optimal);
  REQUIRE(b.status == SolveStatus::Optimal);
  CHECK(a.all_optima->size() == 20825);
  CHECK(*a.all_optima == *b.all_optima);
}

TEST_CASE("solve: deterministic across runs") {
  testing::Rng rng(43);
  for (int t = 0; t < 200; ++t) {
    const auto ip = testing::random_program(rng, 4000);
    const auto a = solve(ip);
    const auto b = solve(ip);
    CHECK(a.status == b.status);
    CHECK(a.witness == b.witness);
    CHECK(a.stats.nodes == b.stats.nodes);
  }
}

TEST_CASE("solve: zero row with positive right-hand side is infeasible") {
  IntegerProgram ip;
  ip.add_variable("y", 0, 5);
  ip.add_constraint({{0, 0}}, Relation::GreaterEq, 1);
  CHECK(solve(ip).status == SolveStatus::Infeasible);
  CHECK(enumerate_optima(ip).status == SolveStatus::Infeasible);
}

TEST_CASE("solve: empty objective is optimal with value zero") {
  IntegerProgram ip;
  ip.add_variable("a", 1, 3);
  ip.add_variable("b", 0, 2);
  ip.add_constraint({{0, 1}, {1, 1}}, Relation::Equal, 3);
  const auto out = solve(ip, {}, WitnessPolicy::Canonical);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(*out.objective_value == 0);
  CHECK(out.witness == std::vector<Int>{1, 2});
  const auto all = enumerate_optima(ip);
  CHECK(all.all_optima->size() == 3);
}

TEST_CASE("solve: prefer_high reverses the canonical order") {
  IntegerProgram ip;
  ip.add_variable("a", 0, 4);
  ip.variables[0].prefer_high = true;
  ip.add_variable("b", 0, 4);
  ip.add_constraint({{0, 1}, {1, 1}}, Relation::LessEq, 5);
  CHECK(solve(ip, {}, WitnessPolicy::Canonical).witness == std::vector<Int>{4, 0});
  CHECK(canonical_less(ip, {4, 1}, {3, 0}));
  CHECK_FALSE(canonical_less(ip, {3, 0}, {3, 0}));
}

TEST_CASE("solve: node budget aborts") {
  IntegerProgram ip;
  for (int v = 0; v < 12; ++v) ip.add_variable("x" + std::to_string(v), 0, 9);
  Coefficients c;
  for (std::size_t v = 0; v < 12; ++v) c[v] = 2;
  ip.add_constraint(c, Relation::Equal, 61);  // odd: infeasible, found only by search
  ip.add_constraint({{0, 1}, {1, -1}}, Relation::LessEq, 0);
  SolveLimits limits;
  limits.max_nodes = 50;
  const auto out = solve(ip, limits);
  CHECK(out.status == SolveStatus::AbortedLimit);
  CHECK(out.stats.nodes <= 50 + 1);
}

TEST_CASE("enumerate_optima: solution cap aborts") {
  IntegerProgram ip;
  for (int v = 0; v < 4; ++v) ip.add_variable("x" + std::to_string(v), 0, 3);
  SolveLimits limits;
  limits.max_solutions = 10;
  CHECK(enumerate_optima(ip, limits).status == SolveStatus::AbortedLimit);
  limits.max_solutions = 256;
  const auto out = enumerate_optima(ip, limits);
  REQUIRE(out.status == SolveStatus::Optimal);
  CHECK(out.all_optima->size() == 256);
}

TEST_CASE("solve: malformed models are rejected") {
  IntegerProgram ip;
  ip.add_variable("a", 2, 1);
  CHECK_THROWS_AS(solve(ip), Error);
  IntegerProgram dangling;
  dangling.add_variable("a", 0, 1);
  dangling.objective.coefficients[3] = 1;
  CHECK_THROWS_AS(enumerate_optima(dangling), Error);
}

TEST_CASE("is_feasible and evaluate: direct checks") {
  IntegerProgram ip;
  ip.add_variable("a", 0, 3);
  ip.add_variable("b", 0, 3);
  ip.add_constraint({{0, 2}, {1, -1}}, Relation::GreaterEq, 1);
  CHECK(is_feasible(ip, {1, 1}));
  CHECK_FALSE(is_feasible(ip, {0, 1}));
  CHECK_FALSE(is_feasible(ip, {4, 1}));
  CHECK_FALSE(is_feasible(ip, {1}));
  Objective o;
  o.coefficients = {{0, 3}, {1, -2}};
  CHECK(evaluate(o, {2, 5}) == -4);
  CHECK(solve_status_name(SolveStatus::AbortedLimit) == "AbortedLimit");
}
