#pragma once

#include <vector>

#include <Eigen/Dense>

#include "emc/mp.hpp"

namespace emc {

// KL-regularized ensemble-control problem over S discrete states and a
// horizon of T transitions. The default dynamics P_bar are column-stochastic
// (column = source state). U(t, a) is the utility collected when the ensemble
// lands in state a at step t+1, for t = 0..T-1.
struct MdpProblem {
    Eigen::MatrixXd P_bar;                 // S x S, used for every step...
    std::vector<Eigen::MatrixXd> P_bar_t;  // ...unless a per-step list is given
    Eigen::MatrixXd U;                     // T x S
    double gamma = 1.0;                    // KL penalty weight; analytic path needs 1
    Eigen::VectorXd rho0;                  // initial distribution over states
    int horizon = 0;                       // T
    Eigen::VectorXd p_alpha;               // active power per state, kW
    Eigen::VectorXd q_alpha;               // reactive power per state, kvar

    int n_states() const { return static_cast<int>(rho0.size()); }
    const Eigen::MatrixXd& P_at(int t) const;
    void validate() const;
};

struct BackwardResult {
    // log desirability, (T+1) x S; row T is the terminal condition log z = 0.
    Eigen::MatrixXd log_z;
    std::vector<Eigen::MatrixXd> P_star;  // T optimal transition matrices
};

struct MdpSolution {
    std::vector<Eigen::MatrixXd> P_star;
    Eigen::MatrixXd rho;          // (T+1) x S state distributions
    std::vector<double> p_t;      // expected active power, T+1 entries
    std::vector<double> q_t;      // expected reactive power, T+1 entries
    std::vector<double> kl_cost;  // realized KL discomfort per step, T entries
    std::vector<double> utility;  // expected utility collected per step, T entries
    double objective = 0.0;       // sum_t E[-U_{t+1}] + sum_t kl_cost_t
    Eigen::MatrixXd log_z;
};

// Desirability recursion, computed in log space with max-subtraction:
//   z_T = 1;  z_t^b = sum_a P_bar^{ab} exp(U_{t+1}^a) z_{t+1}^a
//   P*_t^{ab} = P_bar^{ab} exp(U_{t+1}^a) z_{t+1}^a / z_t^b
// Columns of P* are renormalized; entries below 1e-300 flush to zero.
BackwardResult backward_pass(const MdpProblem& prob);

// rho_{t+1} = P*_t rho_t. Drift of the simplex sum beyond 1e-12 per step is an
// error, not silently fixed.
Eigen::MatrixXd forward_pass(const std::vector<Eigen::MatrixXd>& P_star,
                             const Eigen::VectorXd& rho0);

// p_t = sum_a p^a rho_t^a and likewise for q.
void expected_power(const Eigen::MatrixXd& rho, const Eigen::VectorXd& p_alpha,
                    const Eigen::VectorXd& q_alpha, std::vector<double>& p_t,
                    std::vector<double>& q_t);

// sum_b rho^b sum_a P*^{ab} log(P*^{ab}/P_bar^{ab}), with 0 log(0/x) = 0.
// P* support outside P_bar support is an error.
double kl_cost(const Eigen::MatrixXd& P_star_t, const Eigen::MatrixXd& P_bar_t,
               const Eigen::VectorXd& rho_t);

MdpSolution solve(const MdpProblem& prob);

// Price-following utility: U(t, a) = -price_t * p^a * dt_hours * weight.
Eigen::MatrixXd build_utility(const std::vector<double>& prices,
                              const Eigen::VectorXd& p_alpha, double dt_hours,
                              double weight = 1.0);

// Reactive power from active power at a fixed power factor.
Eigen::VectorXd reactive_from_active(const Eigen::VectorXd& p_alpha, double power_factor);

// Assembles an MdpProblem from a constructed transition matrix.
MdpProblem problem_from_matrix(const TransitionMatrix& tm, const std::vector<double>& prices,
                               double dt_hours, double utility_weight, double power_factor);

double entropy(const Eigen::VectorXd& rho);

}  // namespace emc
