#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace emc {

// Dense LP in the form
//   min c'x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  lo <= x <= hi.
// Any of the constraint blocks may be empty; +-inf bounds are allowed.
struct LpInstance {
    Eigen::VectorXd c;
    Eigen::MatrixXd A_eq;
    Eigen::VectorXd b_eq;
    Eigen::MatrixXd A_ub;
    Eigen::VectorXd b_ub;
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
    std::vector<std::string> names;  // optional variable labels for diagnostics

    int n_vars() const { return static_cast<int>(c.size()); }
    int n_eq() const { return static_cast<int>(b_eq.size()); }
    int n_ub() const { return static_cast<int>(b_ub.size()); }
    void validate() const;

    // Plain-text dump for external cross-checking.
    std::string dump() const;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(LpStatus s);

// Basis snapshot, reusable to warm-start a related instance (same shape).
// Column order: structurals, then one slack per A_ub row.
struct LpBasis {
    std::vector<int> basic;         // one column index per row (eq rows then ub rows)
    std::vector<uint8_t> at_upper;  // nonbasic-at-upper flags, one per column

    bool empty() const { return basic.empty(); }
};

struct LpSolution {
    LpStatus status = LpStatus::iteration_limit;
    Eigen::VectorXd x;              // structural variables
    double objective = 0.0;
    int iterations = 0;
    Eigen::VectorXd y;              // row duals (eq rows then ub rows), set when optimal
    Eigen::VectorXd reduced_costs;  // per structural variable, set when optimal
    double max_infeasibility = 0.0; // residual bound violation on non-optimal exits
    int worst_var = -1;             // most infeasible variable on infeasible exits
    LpBasis basis;                  // final basis for warm starts
};

struct LpOptions {
    double tol_feas = 1e-7;    // primal feasibility / dual optimality tolerance
    double tol_pivot = 1e-9;   // smallest acceptable pivot magnitude
    int max_iter = 0;          // 0 = 100*(rows+cols)+1000
    int refactor_every = 128;  // LU refresh period (pivots)
    const LpBasis* warm = nullptr;
};

// Revised simplex for bounded variables, dense LU basis with product-form
// updates. Pricing uses the most-negative reduced cost with smallest-index
// tie-breaks; a stall (100 pivots without progress) switches to Bland's
// smallest-index rule until the objective moves again, so runs are both
// deterministic and cycling-free. Phase 1 minimizes the total bound violation
// of the basic solution (cold starts begin from an all-artificial basis;
// warm starts from the supplied one).
LpSolution solve_lp(const LpInstance& inst, const LpOptions& opts = {});
LpSolution solve_lp(const LpInstance& inst, double tol, int max_iter);

}  // namespace emc
