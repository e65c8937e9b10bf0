#include "emc/mdp.hpp"

#include <cmath>
#include <limits>

#include "emc/errors.hpp"

namespace emc {

namespace {

constexpr double kFlushBelow = 1e-300;

void check_column_stochastic(const Eigen::MatrixXd& P, const std::string& name) {
    if (P.rows() != P.cols()) fail(ErrorKind::dimension, name + " must be square");
    for (Eigen::Index b = 0; b < P.cols(); ++b) {
        if (P.col(b).minCoeff() < 0.0)
            fail(ErrorKind::config, name + " has a negative entry in column " + std::to_string(b));
        if (std::abs(P.col(b).sum() - 1.0) > 1e-9)
            fail(ErrorKind::config, name + " column " + std::to_string(b) + " sums to " +
                                        std::to_string(P.col(b).sum()));
    }
}

}  // namespace

const Eigen::MatrixXd& MdpProblem::P_at(int t) const {
    if (!P_bar_t.empty()) {
        if (t < 0 || t >= static_cast<int>(P_bar_t.size()))
            fail(ErrorKind::dimension, "no transition matrix for step " + std::to_string(t));
        return P_bar_t[static_cast<size_t>(t)];
    }
    return P_bar;
}

void MdpProblem::validate() const {
    const int S = n_states();
    if (S == 0) fail(ErrorKind::config, "empty initial distribution");
    if (horizon < 1) fail(ErrorKind::config, "horizon must be at least 1");
    if (gamma != 1.0)
        fail(ErrorKind::config,
             "the analytic path requires unit KL penalty (gamma = 1); got " +
                 std::to_string(gamma));
    if (rho0.minCoeff() < 0.0) fail(ErrorKind::config, "rho0 has negative entries");
    if (std::abs(rho0.sum() - 1.0) > 1e-12)
        fail(ErrorKind::config, "rho0 sums to " + std::to_string(rho0.sum()) + ", not 1");
    if (!U.allFinite()) fail(ErrorKind::config, "utilities must be finite");
    if (U.rows() != horizon || U.cols() != S)
        fail(ErrorKind::dimension, "U must be horizon x n_states, got " +
                                       std::to_string(U.rows()) + "x" + std::to_string(U.cols()));
    if (p_alpha.size() != S || q_alpha.size() != S)
        fail(ErrorKind::dimension, "per-state power vectors must have n_states entries");
    if (P_bar_t.empty()) {
        check_column_stochastic(P_bar, "P_bar");
        if (P_bar.rows() != S) fail(ErrorKind::dimension, "P_bar size does not match rho0");
    } else {
        if (static_cast<int>(P_bar_t.size()) != horizon)
            fail(ErrorKind::dimension, "per-step P_bar list must have horizon entries");
        for (size_t t = 0; t < P_bar_t.size(); ++t) {
            check_column_stochastic(P_bar_t[t], "P_bar[" + std::to_string(t) + "]");
            if (P_bar_t[t].rows() != S)
                fail(ErrorKind::dimension, "P_bar[" + std::to_string(t) + "] size mismatch");
        }
    }
}

BackwardResult backward_pass(const MdpProblem& prob) {
    prob.validate();
    const int S = prob.n_states();
    const int T = prob.horizon;

    BackwardResult result;
    result.log_z.resize(T + 1, S);
    result.log_z.row(T).setZero();  // terminal desirability z = 1
    result.P_star.assign(T, Eigen::MatrixXd());

    Eigen::VectorXd weight(S);  // log( exp(U_{t+1}^a) z_{t+1}^a ) per target a
    for (int t = T - 1; t >= 0; --t) {
        const Eigen::MatrixXd& P = prob.P_at(t);
        weight = prob.U.row(t).transpose() + result.log_z.row(t + 1).transpose();
        Eigen::MatrixXd& P_star = result.P_star[static_cast<size_t>(t)];
        P_star.resize(S, S);

        for (int b = 0; b < S; ++b) {
            // log z_t^b = logsumexp_a( log P(a,b) + weight_a ), max-subtracted
            double m = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < S; ++a)
                if (P(a, b) > 0.0) m = std::max(m, std::log(P(a, b)) + weight[a]);
            if (!std::isfinite(m))
                fail(ErrorKind::solver, "all successors of state " + std::to_string(b) +
                                            " are forbidden at step " + std::to_string(t));
            double sum = 0.0;
            for (int a = 0; a < S; ++a) {
                if (P(a, b) > 0.0) {
                    const double e = std::exp(std::log(P(a, b)) + weight[a] - m);
                    P_star(a, b) = e;
                    sum += e;
                } else {
                    P_star(a, b) = 0.0;
                }
            }
            result.log_z(t, b) = m + std::log(sum);
            // renormalize the column; flush denormal dust to keep support clean
            double col = 0.0;
            for (int a = 0; a < S; ++a) {
                double p = P_star(a, b) / sum;
                if (p < kFlushBelow) p = 0.0;
                P_star(a, b) = p;
                col += p;
            }
            for (int a = 0; a < S; ++a) P_star(a, b) /= col;
        }
    }
    return result;
}

Eigen::MatrixXd forward_pass(const std::vector<Eigen::MatrixXd>& P_star,
                             const Eigen::VectorXd& rho0) {
    const int T = static_cast<int>(P_star.size());
    const int S = static_cast<int>(rho0.size());
    if (rho0.minCoeff() < 0.0 || std::abs(rho0.sum() - 1.0) > 1e-12)
        fail(ErrorKind::config, "rho0 must be a distribution");

    Eigen::MatrixXd rho(T + 1, S);
    rho.row(0) = rho0.transpose();
    for (int t = 0; t < T; ++t) {
        if (P_star[static_cast<size_t>(t)].rows() != S ||
            P_star[static_cast<size_t>(t)].cols() != S)
            fail(ErrorKind::dimension, "P_star[" + std::to_string(t) + "] has the wrong shape");
        rho.row(t + 1) = (P_star[static_cast<size_t>(t)] * rho.row(t).transpose()).transpose();
        const double drift = std::abs(rho.row(t + 1).sum() - rho.row(t).sum());
        if (drift > 1e-12)
            fail(ErrorKind::solver, "distribution drift " + std::to_string(drift) +
                                        " at step " + std::to_string(t) +
                                        " exceeds 1e-12");
    }
    return rho;
}

void expected_power(const Eigen::MatrixXd& rho, const Eigen::VectorXd& p_alpha,
                    const Eigen::VectorXd& q_alpha, std::vector<double>& p_t,
                    std::vector<double>& q_t) {
    if (rho.cols() != p_alpha.size() || rho.cols() != q_alpha.size())
        fail(ErrorKind::dimension, "per-state power vectors do not match the distribution");
    const int n = static_cast<int>(rho.rows());
    p_t.resize(n);
    q_t.resize(n);
    for (int t = 0; t < n; ++t) {
        p_t[static_cast<size_t>(t)] = rho.row(t).dot(p_alpha);
        q_t[static_cast<size_t>(t)] = rho.row(t).dot(q_alpha);
    }
}

double kl_cost(const Eigen::MatrixXd& P_star_t, const Eigen::MatrixXd& P_bar_t,
               const Eigen::VectorXd& rho_t) {
    const int S = static_cast<int>(rho_t.size());
    if (P_star_t.rows() != S || P_bar_t.rows() != S)
        fail(ErrorKind::dimension, "matrix sizes do not match the distribution");
    double total = 0.0;
    for (int b = 0; b < S; ++b) {
        if (rho_t[b] == 0.0) continue;
        double div = 0.0;
        for (int a = 0; a < S; ++a) {
            const double p = P_star_t(a, b);
            if (p == 0.0) continue;  // 0 log(0/x) = 0
            const double q = P_bar_t(a, b);
            if (q == 0.0)
                fail(ErrorKind::config, "P_star places probability outside the support of P_bar at (" +
                                            std::to_string(a) + "," + std::to_string(b) + ")");
            div += p * std::log(p / q);
        }
        total += rho_t[b] * div;
    }
    return total;
}

MdpSolution solve(const MdpProblem& prob) {
    BackwardResult back = backward_pass(prob);
    MdpSolution sol;
    sol.P_star = std::move(back.P_star);
    sol.log_z = std::move(back.log_z);
    sol.rho = forward_pass(sol.P_star, prob.rho0);
    expected_power(sol.rho, prob.p_alpha, prob.q_alpha, sol.p_t, sol.q_t);

    const int T = prob.horizon;
    sol.kl_cost.resize(T);
    sol.utility.resize(T);
    sol.objective = 0.0;
    for (int t = 0; t < T; ++t) {
        const auto tu = static_cast<size_t>(t);
        sol.kl_cost[tu] = kl_cost(sol.P_star[tu], prob.P_at(t), sol.rho.row(t).transpose());
        sol.utility[tu] = sol.rho.row(t + 1).dot(prob.U.row(t));
        sol.objective += -sol.utility[tu] + sol.kl_cost[tu];
    }
    return sol;
}

Eigen::MatrixXd build_utility(const std::vector<double>& prices,
                              const Eigen::VectorXd& p_alpha, double dt_hours,
                              double weight) {
    const int T = static_cast<int>(prices.size());
    if (T == 0) fail(ErrorKind::config, "price series is empty");
    Eigen::MatrixXd U(T, p_alpha.size());
    for (int t = 0; t < T; ++t) {
        if (!std::isfinite(prices[static_cast<size_t>(t)]))
            fail(ErrorKind::config, "price at step " + std::to_string(t) + " is not finite");
        U.row(t) = -prices[static_cast<size_t>(t)] * dt_hours * weight * p_alpha.transpose();
    }
    return U;
}

Eigen::VectorXd reactive_from_active(const Eigen::VectorXd& p_alpha, double power_factor) {
    if (!(power_factor > 0.0) || power_factor > 1.0)
        fail(ErrorKind::config, "power factor must lie in (0, 1]");
    const double tan_phi = std::tan(std::acos(power_factor));
    return p_alpha * tan_phi;
}

MdpProblem problem_from_matrix(const TransitionMatrix& tm, const std::vector<double>& prices,
                               double dt_hours, double utility_weight, double power_factor) {
    MdpProblem prob;
    const int S = tm.n_states();
    prob.P_bar = tm.probs;
    prob.horizon = static_cast<int>(prices.size());
    prob.p_alpha = Eigen::Map<const Eigen::VectorXd>(tm.state_power.data(), S);
    prob.q_alpha = reactive_from_active(prob.p_alpha, power_factor);
    prob.rho0 = Eigen::VectorXd::Constant(S, 1.0 / S);
    prob.U = build_utility(prices, prob.p_alpha, dt_hours, utility_weight);
    return prob;
}

double entropy(const Eigen::VectorXd& rho) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < rho.size(); ++i)
        if (rho[i] > 0.0) h -= rho[i] * std::log(rho[i]);
    return h;
}

}  // namespace emc
