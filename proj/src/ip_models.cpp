#include <algorithm>
#include <limits>

#include "nsdecomp/error.hpp"
#include "nsdecomp/ip_model.hpp"

namespace nsdecomp {

namespace {

constexpr Int kMaxMagnitude = Int{1} << 53;

std::string idx(Int i) { return std::to_string(i); }

void add_term(Coefficients& c, std::size_t var, Int coef) {
  c[var] += coef;
}

// Zero coefficients produced by cancellation are dropped, but a row is never
// left empty: 0 * y >= rhs still carries meaning.
Coefficients normalized(Coefficients c) {
  if (c.empty()) return c;
  const auto first = *c.begin();
  std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
  if (c.empty()) c.emplace(first.first, 0);
  return c;
}

std::vector<Int> require_special_gap(const KunzCoordinates& x, Int h) {
  auto sg = special_gaps_above_m(x);
  if (!std::binary_search(sg.begin(), sg.end(), h)) {
    throw Error(Errc::NotSpecialGap, std::to_string(h) + " is not a special gap above m of " + to_string(x));
  }
  return sg;
}

void require_special_gaps(const KunzCoordinates& x, const std::vector<Int>& hs) {
  const auto sg = special_gaps_above_m(x);
  for (Int h : hs) {
    if (!std::binary_search(sg.begin(), sg.end(), h)) {
      throw Error(Errc::NotSpecialGap, std::to_string(h) + " is not a special gap above m of " + to_string(x));
    }
  }
}

// Adds y-variables 0 <= y_i <= x_i - 1 for one block; returns its offset.
std::size_t add_y_block(IntegerProgram& ip, const KunzCoordinates& x, const std::string& prefix) {
  const std::size_t offset = ip.num_vars();
  for (Int i = 1; i < x.multiplicity(); ++i) {
    ip.add_variable(prefix + idx(i), 0, x.at(i) - 1);
  }
  return offset;
}

// x - y stays inside the Kunz polytope.
void add_kunz_rows(IntegerProgram& ip, const KunzCoordinates& x, std::size_t offset, const std::string& tag) {
  const Int m = x.multiplicity();
  auto var = [&](Int i) { return offset + static_cast<std::size_t>(i - 1); };
  for (Int i = 1; i < m; ++i) {
    for (Int j = i; j < m; ++j) {
      if (i + j == m) continue;
      const Int sum = i + j < m ? i + j : i + j - m;
      Coefficients c;
      add_term(c, var(i), 1);
      add_term(c, var(j), 1);
      add_term(c, var(sum), -1);
      const Int rhs = x.at(i) + x.at(j) - x.at(sum) + (i + j > m ? 1 : 0);
      ip.add_constraint(normalized(std::move(c)), Relation::LessEq, rhs, "kunz" + tag + "_" + idx(i) + "_" + idx(j));
    }
  }
}

Coefficients sum_of(std::size_t offset, std::size_t count, Int coef = 1) {
  Coefficients c;
  for (std::size_t v = offset; v < offset + count; ++v) c[v] = coef;
  return c;
}

}  // namespace

std::size_t IntegerProgram::add_variable(std::string name, Int lower, Int upper, VarKind kind) {
  variables.push_back(Variable{std::move(name), lower, upper, kind});
  return variables.size() - 1;
}

void IntegerProgram::add_constraint(Coefficients coefficients, Relation relation, Int rhs, std::string name) {
  constraints.push_back(LinearConstraint{std::move(coefficients), relation, rhs, std::move(name)});
}

void IntegerProgram::validate() const {
  auto bad = [](const std::string& what) { throw Error(Errc::MalformedModel, what); };
  for (const auto& v : variables) {
    if (v.lower > v.upper) bad("variable " + v.name + " has lower bound above upper bound");
    if (v.lower < -kMaxMagnitude || v.upper > kMaxMagnitude) bad("variable " + v.name + " has unbounded range");
    if (v.kind == VarKind::Binary && (v.lower < 0 || v.upper > 1)) bad("binary variable " + v.name + " outside [0,1]");
  }
  auto check_coefficients = [&](const Coefficients& c, const std::string& where) {
    for (const auto& [var, coef] : c) {
      if (var >= variables.size()) bad(where + " references variable " + std::to_string(var));
      if (coef < -kMaxMagnitude || coef > kMaxMagnitude) bad(where + " has an out-of-range coefficient");
    }
  };
  for (std::size_t r = 0; r < constraints.size(); ++r) {
    const auto& row = constraints[r];
    const std::string where = "constraint " + (row.name.empty() ? std::to_string(r) : row.name);
    if (row.coefficients.empty()) bad(where + " has no coefficients");
    if (row.rhs < -kMaxMagnitude || row.rhs > kMaxMagnitude) bad(where + " has an out-of-range right-hand side");
    check_coefficients(row.coefficients, where);
  }
  check_coefficients(objective.coefficients, "objective");
  check_coefficients(tie_break.coefficients, "tie-break objective");
}

std::string_view model_kind_name(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Pk: return "P_k";
    case ModelKind::IpXh: return "IP_xh";
    case ModelKind::IpmXh: return "IPm_xh";
    case ModelKind::Heuristic: return "Heuristic";
    case ModelKind::SetCover: return "SetCover";
    case ModelKind::Compact: return "Compact";
    case ModelKind::CompactSymmetric: return "CompactSymmetric";
    case ModelKind::CompactPseudosymmetric: return "CompactPseudosymmetric";
  }
  return "?";
}

const VarBlock& ModelMeta::block(std::string_view name) const {
  for (const auto& b : blocks) {
    if (b.name == name) return b;
  }
  throw Error(Errc::Internal, "model has no variable block " + std::string(name));
}

KunzModel build_Pk(const KunzCoordinates& x, Int k) {
  const Int m = x.multiplicity();
  if (k < 1 || k > m - 1) {
    throw Error(Errc::IndexOutOfRange, "residue k=" + std::to_string(k) + " outside [1, " + std::to_string(m - 1) + "]");
  }
  KunzModel model;
  auto& ip = model.program;
  add_y_block(ip, x, "y_");
  add_kunz_rows(ip, x, 0, "");

  // Frobenius of x - y attained at residue k, genus ceil((F + 1) / 2):
  //   2 sum(x) - m x_k - k + m - 2 <= 2 sum(y) - m y_k <= 2 sum(x) - m x_k - k + m - 1
  const Int base = 2 * genus(x) - m * x.at(k) - k + m;
  Coefficients c = sum_of(0, ip.num_vars(), 2);
  add_term(c, static_cast<std::size_t>(k - 1), -m);
  c = normalized(std::move(c));
  ip.add_constraint(c, Relation::GreaterEq, base - 2, "frobenius_lo");
  ip.add_constraint(c, Relation::LessEq, base - 1, "frobenius_hi");

  model.meta.kind = ModelKind::Pk;
  model.meta.m = m;
  model.meta.k = k;
  model.meta.blocks = {{"y", 0, ip.num_vars()}};
  return model;
}

KunzModel build_IP_xh(const KunzCoordinates& x, Int h) {
  const Int m = x.multiplicity();
  require_special_gap(x, h);
  if (h < 2 * m) {
    throw Error(Errc::WrongRegime, "gap " + std::to_string(h) + " < 2m; use the genus-m closed form");
  }
  const Int k = residue(h, m);
  KunzModel model = build_Pk(x, k);
  model.program.variables[static_cast<std::size_t>(k - 1)].upper = 0;
  model.program.objective = {sum_of(0, model.program.num_vars()), Sense::Minimize};
  model.meta.kind = ModelKind::IpXh;
  model.meta.gap = h;
  return model;
}

KunzModel build_IPm_xh(const KunzCoordinates& x, Int h) {
  const Int m = x.multiplicity();
  require_special_gap(x, h);
  if (h > 2 * m) throw Error(Errc::WrongRegime, "gap " + std::to_string(h) + " > 2m; use IP^m(x,h)");
  const Int k = residue(h, m);

  KunzModel model;
  auto& ip = model.program;
  add_y_block(ip, x, "y_");
  add_kunz_rows(ip, x, 0, "");
  ip.add_constraint(sum_of(0, ip.num_vars()), Relation::Equal, genus(x) - m, "genus_m");
  auto& yk = ip.variables[static_cast<std::size_t>(k - 1)];
  yk.lower = yk.upper = x.at(k) - 2;
  ip.objective = {sum_of(0, ip.num_vars()), Sense::Minimize};

  model.meta.kind = ModelKind::IpmXh;
  model.meta.m = m;
  model.meta.gap = h;
  model.meta.blocks = {{"y", 0, ip.num_vars()}};
  return model;
}

KunzCoordinates solutions_IPm(const KunzCoordinates& x, Int h) {
  const Int m = x.multiplicity();
  require_special_gap(x, h);
  if (h > 2 * m) throw Error(Errc::WrongRegime, "gap " + std::to_string(h) + " > 2m has no genus-m solution");
  std::vector<Int> part(x.dimension(), 1);
  part[static_cast<std::size_t>(residue(h, m) - 1)] = 2;
  return KunzCoordinates(m, std::move(part));
}

KunzModel build_heuristic(const KunzCoordinates& x, Int h, const std::vector<Int>& special_gaps) {
  require_special_gaps(x, special_gaps);
  KunzModel model = build_IP_xh(x, h);
  auto& ip = model.program;
  const Int m = x.multiplicity();
  const std::size_t ny = ip.num_vars();
  for (auto& v : ip.variables) v.prefer_high = true;

  const Int max_x = *std::max_element(x.values().begin(), x.values().end());
  const Int big_m = m * max_x + m;
  const std::size_t w0 = ip.num_vars();
  for (std::size_t i = 0; i < special_gaps.size(); ++i) {
    ip.add_variable("w_" + idx(static_cast<Int>(i + 1)), 0, 1, VarKind::Binary);
  }
  // m (x_r - y_r) + r - h_i - 1 + M (1 - w_i) >= 0
  for (std::size_t i = 0; i < special_gaps.size(); ++i) {
    const Int hi = special_gaps[i];
    const Int r = residue(hi, m);
    Coefficients c;
    c[static_cast<std::size_t>(r - 1)] = -m;
    c[w0 + i] = -big_m;
    ip.add_constraint(std::move(c), Relation::GreaterEq, hi + 1 - r - m * x.at(r) - big_m,
                      "cover_" + idx(static_cast<Int>(i + 1)));
  }
  ip.objective = {sum_of(w0, special_gaps.size()), Sense::Maximize};

  model.meta.kind = ModelKind::Heuristic;
  model.meta.special_gaps = special_gaps;
  model.meta.big_m = big_m;
  model.meta.blocks = {{"y", 0, ny}, {"w", w0, special_gaps.size()}};
  return model;
}

KunzModel build_set_cover(const KunzCoordinates& x, const std::vector<Int>& special_gaps,
                          const std::vector<KunzCoordinates>& candidates) {
  require_special_gaps(x, special_gaps);
  std::vector<KunzCoordinates> pool;
  for (const auto& c : candidates) {
    if (!is_undercoordinate(c, x)) {
      throw Error(Errc::NotUndercoordinate, to_string(c) + " is not an undercoordinate of " + to_string(x));
    }
    if (std::find(pool.begin(), pool.end(), c) == pool.end()) pool.push_back(c);
  }

  KunzModel model;
  auto& ip = model.program;
  for (std::size_t c = 0; c < pool.size(); ++c) {
    ip.add_variable("z_" + idx(static_cast<Int>(c + 1)), 0, 1, VarKind::Binary);
  }
  for (Int h : special_gaps) {
    Coefficients row;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (covers_gap(pool[c], h)) row[c] = 1;
    }
    if (row.empty()) throw Error(Errc::Uncoverable, "no candidate has " + std::to_string(h) + " among its gaps");
    ip.add_constraint(std::move(row), Relation::GreaterEq, 1, "cover_" + idx(h));
  }
  ip.objective = {sum_of(0, pool.size()), Sense::Minimize};
  for (std::size_t c = 0; c < pool.size(); ++c) ip.tie_break.coefficients[c] = genus(pool[c]);

  model.meta.kind = ModelKind::SetCover;
  model.meta.m = x.multiplicity();
  model.meta.special_gaps = special_gaps;
  model.meta.blocks = {{"z", 0, pool.size()}};
  model.meta.candidates = std::move(pool);
  return model;
}

KunzModel build_compact(const KunzCoordinates& x, const std::vector<Int>& special_gaps, PartRestriction restriction) {
  if (special_gaps.empty()) throw Error(Errc::EmptySpecialGaps, "compact model needs at least one special gap");
  require_special_gaps(x, special_gaps);
  const Int m = x.multiplicity();
  const std::size_t s = special_gaps.size();
  const std::size_t dim = x.dimension();
  std::vector<Int> res(s);
  for (std::size_t l = 0; l < s; ++l) {
    res[l] = residue(special_gaps[l], m);
    for (std::size_t k = 0; k < l; ++k) {
      if (res[k] == res[l]) throw Error(Errc::Internal, "two special gaps share a residue");
    }
  }

  KunzModel model;
  auto& ip = model.program;
  auto& meta = model.meta;
  const Int big_m = *std::max_element(x.values().begin(), x.values().end());

  // Blocks are not tied to gaps: a minimal decomposition may need two parts
  // with the same Frobenius number. Block l takes gap j when a_l_j = 1.
  // Layout: y-blocks, then w, a, z and the prefix coverage c.
  for (std::size_t l = 0; l < s; ++l) {
    const std::string tag = idx(static_cast<Int>(l + 1));
    const std::size_t off = add_y_block(ip, x, "y_" + tag + "_");
    meta.blocks.push_back({"y" + tag, off, dim});
  }
  auto add_binaries = [&](const std::string& prefix, bool pairs) {
    const std::size_t offset = ip.num_vars();
    for (std::size_t l = 0; l < s; ++l) {
      if (!pairs) {
        ip.add_variable(prefix + idx(static_cast<Int>(l + 1)), 0, 1, VarKind::Binary);
        continue;
      }
      for (std::size_t k = 0; k < s; ++k) {
        ip.add_variable(prefix + idx(static_cast<Int>(l + 1)) + "_" + idx(static_cast<Int>(k + 1)), 0, 1,
                        VarKind::Binary);
      }
    }
    return offset;
  };
  const std::size_t w0 = add_binaries("w_", false);
  meta.blocks.push_back({"w", w0, s});
  const std::size_t a0 = add_binaries("a_", true);
  meta.blocks.push_back({"a", a0, s * s});
  const std::size_t z0 = add_binaries("z_", true);
  meta.blocks.push_back({"z", z0, s * s});
  const std::size_t c0 = ip.num_vars();
  for (std::size_t l = 0; l + 1 < s; ++l) {
    for (std::size_t k = 0; k < s; ++k) {
      ip.add_variable("c_" + idx(static_cast<Int>(l + 1)) + "_" + idx(static_cast<Int>(k + 1)), 0, 1, VarKind::Binary);
    }
  }
  meta.blocks.push_back({"c", c0, (s - 1) * s});

  auto y = [&](std::size_t l, Int i) { return l * dim + static_cast<std::size_t>(i - 1); };
  auto w = [&](std::size_t l) { return w0 + l; };
  auto a = [&](std::size_t l, std::size_t j) { return a0 + l * s + j; };
  auto z = [&](std::size_t l, std::size_t k) { return z0 + l * s + k; };
  auto c = [&](std::size_t l, std::size_t k) { return c0 + l * s + k; };

  std::vector<Int> target(s);
  for (std::size_t j = 0; j < s; ++j) {
    const Int h = special_gaps[j];
    target[j] = h > 2 * m ? genus(x) - ceil_half(h + 1) : genus(x) - m;
  }

  for (std::size_t l = 0; l < s; ++l) {
    const std::string tag = "_" + idx(static_cast<Int>(l + 1));
    add_kunz_rows(ip, x, l * dim, tag);
    // Genus link: sum_i y^l_i = sum_j c_j a_l_j.
    Coefficients link = sum_of(l * dim, dim);
    for (std::size_t j = 0; j < s; ++j) link[a(l, j)] = -target[j];
    ip.add_constraint(normalized(std::move(link)), Relation::Equal, 0, "genus" + tag);
    // One gap per active block.
    Coefficients assign = sum_of(a(l, 0), s);
    assign[w(l)] = -1;
    ip.add_constraint(std::move(assign), Relation::Equal, 0, "assign" + tag);
    for (std::size_t j = 0; j < s; ++j) {
      // The chosen gap stays a gap: a_l_j = 1 forces y^l_k(h_j) = 0.
      const Int cap = x.at(res[j]) - 1;
      const std::string pair = tag + "_" + idx(static_cast<Int>(j + 1));
      ip.add_constraint(normalized({{y(l, res[j]), 1}, {a(l, j), cap}}), Relation::LessEq, cap, "fix" + pair);
      const Int h = special_gaps[j];
      const bool excluded = (restriction == PartRestriction::Symmetric && h % 2 == 0) ||
                            (restriction == PartRestriction::Pseudosymmetric && h % 2 != 0);
      if (excluded) ip.variables[a(l, j)].upper = 0;
    }
    if (l + 1 < s) {
      // Active blocks first.
      const std::string next = "_" + idx(static_cast<Int>(l + 2));
      ip.add_constraint({{w(l), 1}, {w(l + 1), -1}}, Relation::GreaterEq, 0, "order" + tag + next);
    }
  }
  // Prefix coverage c_l_k: gap k is a gap of one of the blocks 1..l. Every
  // active block covers the lowest gap left uncovered by the blocks before it.
  for (std::size_t l = 0; l + 1 < s; ++l) {
    for (std::size_t k = 0; k < s; ++k) {
      const std::string tag = "_" + idx(static_cast<Int>(l + 1)) + "_" + idx(static_cast<Int>(k + 1));
      ip.add_constraint({{c(l, k), 1}, {z(l, k), -1}}, Relation::GreaterEq, 0, "prefix_lo" + tag);
      if (l == 0) {
        ip.add_constraint({{c(l, k), 1}, {z(l, k), -1}}, Relation::LessEq, 0, "prefix_hi" + tag);
        continue;
      }
      ip.add_constraint({{c(l, k), 1}, {c(l - 1, k), -1}}, Relation::GreaterEq, 0, "prefix_keep" + tag);
      ip.add_constraint({{c(l, k), 1}, {c(l - 1, k), -1}, {z(l, k), -1}}, Relation::LessEq, 0, "prefix_hi" + tag);
    }
  }
  ip.add_constraint({{z(0, 0), 1}, {w(0), -1}}, Relation::GreaterEq, 0, "lowest_1_1");
  for (std::size_t l = 1; l < s; ++l) {
    for (std::size_t k = 0; k < s; ++k) {
      // z_l_k >= w_l - c_(l-1)_k - sum_(k' < k) (1 - c_(l-1)_k')
      Coefficients row{{z(l, k), 1}, {w(l), -1}, {c(l - 1, k), 1}};
      for (std::size_t q = 0; q < k; ++q) row[c(l - 1, q)] = -1;
      const std::string tag = "_" + idx(static_cast<Int>(l + 1)) + "_" + idx(static_cast<Int>(k + 1));
      ip.add_constraint(std::move(row), Relation::GreaterEq, -static_cast<Int>(k), "lowest" + tag);
    }
  }
  for (std::size_t k = 0; k < s; ++k) {
    Coefficients cover;
    for (std::size_t l = 0; l < s; ++l) cover[z(l, k)] = 1;
    ip.add_constraint(std::move(cover), Relation::GreaterEq, 1, "cover_" + idx(static_cast<Int>(k + 1)));
  }
  for (std::size_t l = 0; l < s; ++l) {
    for (std::size_t k = 0; k < s; ++k) {
      const std::string tag = "_" + idx(static_cast<Int>(l + 1)) + "_" + idx(static_cast<Int>(k + 1));
      const std::size_t yv = y(l, res[k]);
      ip.add_constraint({{yv, 1}, {w(l), -big_m}, {z(l, k), 1}}, Relation::GreaterEq, 1 - big_m, "zlo" + tag);
      ip.add_constraint({{yv, 1}, {z(l, k), big_m}}, Relation::LessEq, big_m, "zhi" + tag);
      ip.add_constraint({{w(l), -1}, {z(l, k), 1}}, Relation::LessEq, 0, "zw" + tag);
    }
  }

  ip.objective = {sum_of(w0, s), Sense::Minimize};
  // Among minimum covers prefer the largest total sum(y). A block's sum(y)
  // is pinned to the target of its gap, so the preference is stated on a.
  ip.tie_break.sense = Sense::Maximize;
  for (std::size_t l = 0; l < s; ++l) {
    for (std::size_t j = 0; j < s; ++j) {
      if (target[j] != 0) ip.tie_break.coefficients[a(l, j)] = target[j];
    }
  }
  for (std::size_t v = 0; v < s * dim; ++v) ip.variables[v].prefer_high = true;
  // Branch on w, then block by block: gap choice, then coordinates.
  const int top = 10 * static_cast<int>(s + 1);
  for (std::size_t l = 0; l < s; ++l) {
    const int base = 10 * static_cast<int>(s - l);
    ip.variables[w(l)].priority = top;
    for (std::size_t j = 0; j < s; ++j) {
      ip.variables[a(l, j)].priority = base + 2;
      ip.variables[z(l, j)].priority = base;
      if (l + 1 < s) ip.variables[c(l, j)].priority = base;
    }
    for (Int i = 1; i < m; ++i) ip.variables[y(l, i)].priority = base + 1;
  }

  meta.kind = restriction == PartRestriction::None        ? ModelKind::Compact
              : restriction == PartRestriction::Symmetric ? ModelKind::CompactSymmetric
                                                          : ModelKind::CompactPseudosymmetric;
  meta.m = m;
  meta.special_gaps = special_gaps;
  meta.big_m = big_m;
  return model;
}

std::vector<KunzCoordinates> decode_compact(const KunzCoordinates& x, const KunzModel& model,
                                            const std::vector<Int>& solution) {
  const auto& meta = model.meta;
  const auto& wb = meta.block("w");
  if (solution.size() != model.program.num_vars()) {
    throw Error(Errc::DimensionMismatch, "solution length does not match the compact model");
  }
  std::vector<KunzCoordinates> parts;
  for (std::size_t l = 0; l < wb.size; ++l) {
    if (solution[wb.offset + l] != 1) continue;
    const auto& yb = meta.block("y" + std::to_string(l + 1));
    std::vector<Int> part(x.dimension());
    for (std::size_t i = 0; i < part.size(); ++i) part[i] = x.values()[i] - solution[yb.offset + i];
    parts.emplace_back(x.multiplicity(), std::move(part));
  }
  return parts;
}

}  // namespace nsdecomp
