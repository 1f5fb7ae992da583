#include <sstream>

#include "nsdecomp/ip_model.hpp"

namespace nsdecomp {

namespace {

std::string var_name(const IntegerProgram& ip, std::size_t v) {
  const auto& name = ip.variables[v].name;
  return name.empty() ? "v" + std::to_string(v) : name;
}

void write_terms(std::ostream& out, const IntegerProgram& ip, const Coefficients& c) {
  bool first = true;
  for (const auto& [v, coef] : c) {
    Int a = coef;
    if (first) {
      if (a < 0) out << "- ";
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    if (a < 0) a = -a;
    if (a != 1) out << a << ' ';
    out << var_name(ip, v);
    first = false;
  }
  if (first) out << '0';
}

}  // namespace

std::string to_lp_format(const IntegerProgram& ip, const std::string& comment) {
  std::ostringstream out;
  if (!comment.empty()) {
    std::istringstream lines(comment);
    for (std::string line; std::getline(lines, line);) out << "\\ " << line << '\n';
  }
  if (!ip.tie_break.empty()) {
    out << "\\ tie-break (" << (ip.tie_break.sense == Sense::Minimize ? "minimize" : "maximize") << "): ";
    write_terms(out, ip, ip.tie_break.coefficients);
    out << '\n';
  }
  out << (ip.objective.sense == Sense::Minimize ? "Minimize" : "Maximize") << "\n obj: ";
  if (ip.objective.empty() && ip.num_vars() > 0) {
    out << "0 " << var_name(ip, 0);
  } else {
    write_terms(out, ip, ip.objective.coefficients);
  }
  out << "\nSubject To\n";
  for (std::size_t r = 0; r < ip.constraints.size(); ++r) {
    const auto& row = ip.constraints[r];
    out << ' ' << (row.name.empty() ? "c" + std::to_string(r + 1) : row.name) << ": ";
    write_terms(out, ip, row.coefficients);
    switch (row.relation) {
      case Relation::LessEq: out << " <= "; break;
      case Relation::GreaterEq: out << " >= "; break;
      case Relation::Equal: out << " = "; break;
    }
    out << row.rhs << '\n';
  }
  out << "Bounds\n";
  for (std::size_t v = 0; v < ip.num_vars(); ++v) {
    const auto& var = ip.variables[v];
    if (var.lower == var.upper) {
      out << ' ' << var_name(ip, v) << " = " << var.lower << '\n';
    } else {
      out << ' ' << var.lower << " <= " << var_name(ip, v) << " <= " << var.upper << '\n';
    }
  }
  std::ostringstream generals, binaries;
  for (std::size_t v = 0; v < ip.num_vars(); ++v) {
    (ip.variables[v].kind == VarKind::Binary ? binaries : generals) << ' ' << var_name(ip, v);
  }
  if (!generals.str().empty()) out << "Generals\n" << generals.str() << '\n';
  if (!binaries.str().empty()) out << "Binaries\n" << binaries.str() << '\n';
  out << "End\n";
  return out.str();
}

}  // namespace nsdecomp
