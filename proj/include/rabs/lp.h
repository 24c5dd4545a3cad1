#ifndef RABS_LP_H_
#define RABS_LP_H_

#include <string>
#include <vector>

namespace rabs {

// Numerical tolerances of the simplex kernel.
struct LpTolerances {
  static constexpr double kPivot = 1e-9;
  static constexpr double kFeasibility = 1e-7;
  static constexpr double kReducedCost = 1e-9;
};

struct LpRow {
  std::vector<double> coeffs;
  double rhs = 0.0;
};

// maximize objective . v  subject to  coeffs . v <= rhs (every row),  v >= 0.
struct LpProblem {
  int variable_count = 0;
  std::vector<double> objective;
  std::vector<LpRow> constraints;

  explicit LpProblem(int n = 0) : variable_count(n), objective(n, 0.0) {}

  // Appends a row given as sparse (index, coefficient) pairs.
  void add_le(const std::vector<std::pair<int, double>>& terms, double rhs);
  int row_count() const { return static_cast<int>(constraints.size()); }

  // Throws InvalidInput on a dimension mismatch or non-finite data.
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective_value = 0.0;
  std::vector<double> values;
  // Nonnegative row multipliers of the optimal basis (empty unless optimal).
  std::vector<double> duals;
  int iterations = 0;
};

// Two-phase dense tableau simplex with Bland's rule. Deterministic; never
// throws on infeasible or unbounded input (reported through status).
LpSolution solve_lp(const LpProblem& problem);

// Plain-text form for hand cross-checks:
//   max c1 c2 ...
//   st
//   a11 a12 ... <= b1
std::string to_text(const LpProblem& problem);
LpProblem parse_lp_text(const std::string& text);

}  // namespace rabs

#endif  // RABS_LP_H_
