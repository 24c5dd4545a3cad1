#include "rabs/lp.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "rabs/error.h"

namespace rabs {

void LpProblem::add_le(const std::vector<std::pair<int, double>>& terms,
                       double rhs) {
  LpRow row;
  row.coeffs.assign(variable_count, 0.0);
  for (const auto& [index, value] : terms) {
    if (index < 0 || index >= variable_count) {
      throw InvalidInput("LP term index out of range");
    }
    row.coeffs[index] += value;
  }
  row.rhs = rhs;
  constraints.push_back(std::move(row));
}

void LpProblem::validate() const {
  if (variable_count < 0 ||
      static_cast<int>(objective.size()) != variable_count) {
    throw InvalidInput("LP objective length does not match variable count");
  }
  for (const LpRow& row : constraints) {
    if (static_cast<int>(row.coeffs.size()) != variable_count) {
      throw InvalidInput("LP row length does not match variable count");
    }
    if (!std::isfinite(row.rhs)) throw InvalidInput("LP rhs must be finite");
    for (double a : row.coeffs) {
      if (!std::isfinite(a)) throw InvalidInput("LP coefficient must be finite");
    }
  }
  for (double c : objective) {
    if (!std::isfinite(c)) throw InvalidInput("LP objective must be finite");
  }
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

namespace {

enum class PhaseResult { kOptimal, kUnbounded };

// Row-major tableau. Columns: originals, slacks, artificials, then rhs.
class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * (cols + 1), 0.0) {}

  double& at(int r, int c) { return data_[r * (cols_ + 1) + c]; }
  double at(int r, int c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(int r) { return at(r, cols_); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void pivot(int pr, int pc, std::vector<double>& reduced) {
    const double inv = 1.0 / at(pr, pc);
    double* prow = &data_[pr * (cols_ + 1)];
    for (int c = 0; c <= cols_; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (int r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      double* row = &data_[r * (cols_ + 1)];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
    const double f = reduced[pc];
    if (f != 0.0) {
      for (int c = 0; c <= cols_; ++c) reduced[c] -= f * prow[c];
      reduced[pc] = 0.0;
    }
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
};

// reduced[c] = cost[c] - sum_r cost[basis[r]] * T[r][c]; reduced[cols] holds
// -(current objective).
std::vector<double> reduced_costs(const Tableau& t, const std::vector<int>& basis,
                                  const std::vector<double>& cost) {
  std::vector<double> reduced(t.cols() + 1, 0.0);
  for (int c = 0; c < t.cols(); ++c) reduced[c] = cost[c];
  for (int r = 0; r < t.rows(); ++r) {
    const double cb = cost[basis[r]];
    if (cb == 0.0) continue;
    for (int c = 0; c <= t.cols(); ++c) reduced[c] -= cb * t.at(r, c);
  }
  return reduced;
}

// Maximizes cost over columns [0, allowed_cols) with Bland's rule.
PhaseResult run_phase(Tableau& t, std::vector<int>& basis,
                      const std::vector<double>& cost, int allowed_cols,
                      int& iterations) {
  std::vector<double> reduced = reduced_costs(t, basis, cost);
  while (true) {
    int entering = -1;
    for (int c = 0; c < allowed_cols; ++c) {
      if (reduced[c] > LpTolerances::kReducedCost) {
        entering = c;
        break;
      }
    }
    if (entering < 0) return PhaseResult::kOptimal;

    int leaving = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, entering);
      if (a <= LpTolerances::kPivot) continue;
      const double ratio = std::max(t.rhs(r), 0.0) / a;
      if (leaving < 0) {
        best = ratio;
        leaving = r;
        continue;
      }
      const double slack = 1e-12 * (1.0 + best);
      if (ratio < best - slack) {
        best = ratio;
        leaving = r;
      } else if (ratio <= best + slack && basis[r] < basis[leaving]) {
        best = std::min(best, ratio);
        leaving = r;
      }
    }
    if (leaving < 0) return PhaseResult::kUnbounded;
    t.pivot(leaving, entering, reduced);
    basis[leaving] = entering;
    ++iterations;
  }
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  problem.validate();
  const int n = problem.variable_count;
  const int m = problem.row_count();

  int artificial_count = 0;
  for (const LpRow& row : problem.constraints) {
    if (row.rhs < 0.0) ++artificial_count;
  }
  const int slack0 = n;
  const int art0 = n + m;
  const int cols = n + m + artificial_count;

  Tableau t(m, cols);
  std::vector<int> basis(m);
  int next_art = art0;
  for (int r = 0; r < m; ++r) {
    const LpRow& row = problem.constraints[r];
    const double sign = row.rhs < 0.0 ? -1.0 : 1.0;
    for (int c = 0; c < n; ++c) t.at(r, c) = sign * row.coeffs[c];
    t.at(r, slack0 + r) = sign;
    t.rhs(r) = sign * row.rhs;
    if (sign < 0.0) {
      t.at(r, next_art) = 1.0;
      basis[r] = next_art++;
    } else {
      basis[r] = slack0 + r;
    }
  }

  LpSolution sol;
  if (artificial_count > 0) {
    std::vector<double> phase1_cost(cols, 0.0);
    for (int c = art0; c < cols; ++c) phase1_cost[c] = -1.0;
    run_phase(t, basis, phase1_cost, cols, sol.iterations);
    double infeasibility = 0.0;
    for (int r = 0; r < m; ++r) {
      if (basis[r] >= art0) infeasibility += std::max(t.rhs(r), 0.0);
    }
    if (infeasibility > LpTolerances::kFeasibility) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    // Drive zero-level artificials out of the basis; a row with no usable
    // pivot is redundant and keeps its artificial pinned at zero.
    std::vector<double> scratch(cols + 1, 0.0);
    for (int r = 0; r < m; ++r) {
      if (basis[r] < art0) continue;
      for (int c = 0; c < art0; ++c) {
        if (std::abs(t.at(r, c)) > LpTolerances::kPivot) {
          t.pivot(r, c, scratch);
          basis[r] = c;
          break;
        }
      }
    }
  }

  std::vector<double> cost(cols, 0.0);
  for (int c = 0; c < n; ++c) cost[c] = problem.objective[c];
  if (run_phase(t, basis, cost, art0, sol.iterations) == PhaseResult::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  sol.status = LpStatus::kOptimal;
  sol.values.assign(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) sol.values[basis[r]] = std::max(t.rhs(r), 0.0);
  }
  sol.objective_value = 0.0;
  for (int c = 0; c < n; ++c) sol.objective_value += problem.objective[c] * sol.values[c];

  const std::vector<double> reduced = reduced_costs(t, basis, cost);
  sol.duals.assign(m, 0.0);
  for (int r = 0; r < m; ++r) sol.duals[r] = std::max(-reduced[slack0 + r], 0.0);
  return sol;
}

std::string to_text(const LpProblem& problem) {
  std::ostringstream os;
  os.precision(17);
  os << "max";
  for (double c : problem.objective) os << ' ' << c;
  os << "\nst\n";
  for (const LpRow& row : problem.constraints) {
    for (std::size_t k = 0; k < row.coeffs.size(); ++k) {
      if (k) os << ' ';
      os << row.coeffs[k];
    }
    os << " <= " << row.rhs << '\n';
  }
  return os.str();
}

LpProblem parse_lp_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty LP text");
  std::istringstream head(line);
  std::string word;
  head >> word;
  if (word != "max") throw InvalidInput("LP text must start with 'max'");
  std::vector<double> objective;
  for (double v; head >> v;) objective.push_back(v);
  LpProblem p(static_cast<int>(objective.size()));
  p.objective = objective;
  if (!std::getline(in, line) || line != "st") {
    throw InvalidInput("LP text missing 'st' line");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto pos = line.find("<=");
    if (pos == std::string::npos) throw InvalidInput("LP row missing '<='");
    std::istringstream lhs(line.substr(0, pos));
    LpRow row;
    for (double v; lhs >> v;) row.coeffs.push_back(v);
    row.rhs = std::stod(line.substr(pos + 2));
    p.constraints.push_back(std::move(row));
  }
  p.validate();
  return p;
}

}  // namespace rabs
