#include "emc/lp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "emc/errors.hpp"

// temporary profiling hooks
static double g_t_btran = 0, g_t_ftran = 0, g_t_price = 0, g_t_refactor = 0, g_t_other = 0;
static long g_n_full = 0, g_n_iters = 0, g_n_refactor = 0, g_n_phase1 = 0, g_n_bland = 0, g_n_degen = 0;
struct ScopedTimer {
    double& acc;
    std::chrono::steady_clock::time_point t0;
    explicit ScopedTimer(double& a) : acc(a), t0(std::chrono::steady_clock::now()) {}
    ~ScopedTimer() { acc += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};
extern "C" void emc_lp_stats_dump() {
    fprintf(stderr, "lp stats: iters=%ld (phase1 %ld bland %ld degen %ld) full_prices=%ld refactors=%ld btran=%.2fs ftran=%.2fs price=%.2fs refactor=%.2fs other=%.2fs\n",
            g_n_iters, g_n_phase1, g_n_bland, g_n_degen, g_n_full, g_n_refactor, g_t_btran, g_t_ftran, g_t_price, g_t_refactor, g_t_other);
}

namespace emc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum VarStatus : uint8_t { kAtLower, kAtUpper, kAtFree, kBasic };

// Product-form basis update: after a pivot on row r with entering column
// direction d = B^{-1} a_enter, the new inverse applies E^{-1} with E = I
// except column r = d.
struct Eta {
    int row;
    Eigen::VectorXd d;
};

// Working problem: structural columns, then one slack per ub row, then one
// implicit artificial unit column per row (never stored in W).
class Simplex {
public:
    Simplex(const LpInstance& inst, const LpOptions& opts) : inst_(inst), opts_(opts) {
        m_ = inst.n_eq() + inst.n_ub();
        n_struct_ = inst.n_vars();
        n_work_ = n_struct_ + inst.n_ub();

        W_.resize(m_, n_work_);
        if (inst.n_eq() > 0) W_.topLeftCorner(inst.n_eq(), n_struct_) = inst.A_eq;
        if (inst.n_ub() > 0) {
            W_.bottomLeftCorner(inst.n_ub(), n_struct_) = inst.A_ub;
            W_.rightCols(inst.n_ub()).setZero();
            for (int i = 0; i < inst.n_ub(); ++i) W_(inst.n_eq() + i, n_struct_ + i) = 1.0;
            if (inst.n_eq() > 0) W_.topRightCorner(inst.n_eq(), inst.n_ub()).setZero();
        }
        b_.resize(m_);
        if (inst.n_eq() > 0) b_.head(inst.n_eq()) = inst.b_eq;
        if (inst.n_ub() > 0) b_.tail(inst.n_ub()) = inst.b_ub;

        lo_.resize(n_work_ + m_);
        hi_.resize(n_work_ + m_);
        lo_.head(n_struct_) = inst.lo;
        hi_.head(n_struct_) = inst.hi;
        for (int j = n_struct_; j < n_work_; ++j) {
            lo_[j] = 0.0;
            hi_[j] = kInf;
        }
        for (int j = n_work_; j < n_work_ + m_; ++j) {
            lo_[j] = 0.0;  // artificials are fixed at zero once feasible
            hi_[j] = 0.0;
        }

        cost_.setZero(n_work_);
        cost_.head(n_struct_) = inst.c;


        x_.setZero(n_work_ + m_);
        status_.assign(n_work_ + m_, kAtLower);
        basic_.assign(m_, -1);
        in_basis_.assign(n_work_ + m_, -1);
        max_iter_ = opts.max_iter > 0 ? opts.max_iter : 100 * (m_ + n_work_) + 1000;
    }

    LpSolution run() {
        if (!init_basis()) cold_basis();
        factorize();
        compute_basics();

        if (getenv("EMC_LP_DIAG")) {
            int viol = 0;
            double tot = 0;
            for (int i = 0; i < m_; ++i) {
                const int j = basic_[i];
                double v = std::max(lo_[j] - x_[j], x_[j] - hi_[j]);
                if (v > opts_.tol_feas) { ++viol; tot += v; }
            }
            fprintf(stderr, "start: %d violated basics, total %.3f\n", viol, tot);
        }
        LpSolution sol;
        bool phase_one = true;
        std::vector<uint8_t> banned(n_work_, 0);  // columns rejected for tiny pivots
        bool any_banned = false;
        bool retried_after_refactor = false;

        // Pricing: most-negative reduced cost (smallest index on ties). A run
        // of kStallLimit pivots without progress switches to Bland's
        // smallest-index rule, which provably escapes degenerate cycles; the
        // first strict improvement switches back. Both rules depend only on
        // the iteration history, so solves stay deterministic.
        bool bland_mode = false;
        int stalled = 0;
        double last_progress_obj = std::numeric_limits<double>::infinity();
        constexpr int kStallLimit = 100;

        while (true) {
            if (iters_ >= max_iter_) return finish(sol, LpStatus::iteration_limit);

            if (phase_one && infeasibility() <= opts_.tol_feas) {
                phase_one = false;
                bland_mode = false;
                stalled = 0;
                last_progress_obj = std::numeric_limits<double>::infinity();
            }

            const double cur_obj = phase_one ? total_infeasibility() : current_objective();
            if (cur_obj < last_progress_obj - 1e-11) {
                last_progress_obj = cur_obj;
                stalled = 0;
                bland_mode = false;
            } else if (++stalled >= kStallLimit) {
                bland_mode = true;
            }

            Eigen::VectorXd cb(m_);
            for (int i = 0; i < m_; ++i) {
                const int j = basic_[i];
                cb[i] = phase_one ? phase1_cost(j) : work_cost(j);
            }
            Eigen::VectorXd y;
            {
                ScopedTimer st(g_t_btran);
                y = btran(cb);
            }
            ++g_n_iters;
            if (phase_one) ++g_n_phase1;
            if (bland_mode) ++g_n_bland;

            // Candidate-list pricing: a full scan every kRefresh iterations
            // (or whenever the list runs dry) seeds a shortlist of the most
            // attractive columns; between refreshes only the shortlist is
            // priced. Bland mode always scans fully, since its anti-cycling
            // guarantee needs the global smallest eligible index.
            int enter = -1;
            double s = 1.0;
            double entering_slope = 0.0;
            const bool full_scan = bland_mode || phase_one != last_phase_one_ ||
                                   candidates_.empty() || iters_ >= candidate_refresh_at_;
            last_phase_one_ = phase_one;
            if (!full_scan) {
                double best_score = -opts_.tol_feas;
                for (int j : candidates_) {
                    if (status_[j] == kBasic || banned[j]) continue;
                    const double dj =
                        (phase_one ? 0.0 : cost_[j]) - y.dot(W_.col(j));
                    double score, dir;
                    if (!score_of(j, dj, score, dir)) continue;
                    if (score < best_score) {
                        enter = j;
                        s = dir;
                        best_score = score;
                        entering_slope = score;
                    }
                }
            }
            if (enter < 0) {
                ScopedTimer st(g_t_price);
                ++g_n_full;
                Eigen::VectorXd d = -(W_.transpose() * y);
                if (!phase_one) d += cost_;
                double best_score = -opts_.tol_feas;
                scored_.clear();
                for (int j = 0; j < n_work_; ++j) {
                    if (status_[j] == kBasic || banned[j]) continue;
                    double score, dir;
                    if (!score_of(j, d[j], score, dir)) continue;
                    if (score < -opts_.tol_feas) scored_.push_back({score, j});
                    if (score < best_score) {
                        enter = j;
                        s = dir;
                        entering_slope = score;
                        if (bland_mode) break;  // first eligible index
                        best_score = score;
                    }
                }
                if (static_cast<int>(scored_.size()) > kCandidates) {
                    std::nth_element(scored_.begin(), scored_.begin() + kCandidates,
                                     scored_.end());
                    scored_.resize(kCandidates);
                }
                candidates_.clear();
                for (const auto& [score, j] : scored_) candidates_.push_back(j);
                std::sort(candidates_.begin(), candidates_.end());
                candidate_refresh_at_ = iters_ + kCandidateRefresh;
            }
            if (enter < 0) {
                if (any_banned) {
                    // Tiny pivots blocked every candidate; refresh the
                    // factorization once and retry before concluding.
                    if (retried_after_refactor)
                        fail(ErrorKind::solver, "no usable pivot after refactorization");
                    factorize();
                    compute_basics();
                    std::fill(banned.begin(), banned.end(), 0);
                    any_banned = false;
                    retried_after_refactor = true;
                    continue;
                }
                // Never conclude from values carried through eta updates:
                // refactorize, recompute the basics exactly, and reprice once.
                // Drift can otherwise smuggle bound violations past the exit.
                if (!verified_exit_) {
                    factorize();
                    compute_basics();
                    candidates_.clear();
                    verified_exit_ = true;
                    if (phase_one && infeasibility() <= opts_.tol_feas) phase_one = false;
                    continue;
                }
                if (phase_one) {
                    if (infeasibility() > opts_.tol_feas) return finish(sol, LpStatus::infeasible);
                    phase_one = false;
                    continue;
                }
                return finish(sol, LpStatus::optimal);
            }
            retried_after_refactor = false;
            verified_exit_ = false;

            Eigen::VectorXd w;
            {
                ScopedTimer st(g_t_ftran);
                w = ftran(W_.col(enter));
            }
            // pivots far below the column's own scale amplify error
            const double tol_p =
                m_ > 0 ? std::max(opts_.tol_pivot, 1e-11 * w.cwiseAbs().maxCoeff())
                       : opts_.tol_pivot;

            // Ratio test: entering variable moves by t >= 0 in direction s,
            // basic variable i moves at rate -s*w_i.
            double best_t = kInf;
            int leave_row = -1;
            double leave_target = 0.0;

            if (phase_one && !getenv("EMC_LP_SHORTSTEP")) {
                // Piecewise-linear line search on the total infeasibility: walk
                // past breakpoints while the slope stays negative and pivot at
                // the one where it turns. Each basic variable contributes a
                // slope increase of |w_i| at every bound it crosses.
                breaks_.clear();
                for (int i = 0; i < m_; ++i) {
                    const double wi = w[i];
                    if (std::abs(wi) <= tol_p) continue;
                    const int bj = basic_[i];
                    const double rate = -s * wi;
                    const double xi = x_[bj];
                    const double near_b = rate > 0.0 ? lo_[bj] : hi_[bj];
                    const double far_b = rate > 0.0 ? hi_[bj] : lo_[bj];
                    const bool beyond =
                        rate > 0.0 ? xi < lo_[bj] - opts_.tol_feas
                                   : xi > hi_[bj] + opts_.tol_feas;
                    const bool past_far = rate > 0.0 ? xi > hi_[bj] + opts_.tol_feas
                                                     : xi < lo_[bj] - opts_.tol_feas;
                    if (past_far) continue;  // moving deeper into violation
                    if (beyond)
                        breaks_.push_back({std::max(0.0, (near_b - xi) / rate), i, near_b});
                    if (std::isfinite(far_b))
                        breaks_.push_back({std::max(0.0, (far_b - xi) / rate), i, far_b});
                }
                std::sort(breaks_.begin(), breaks_.end(),
                          [&](const Break& a, const Break& b) {
                              if (a.t != b.t) return a.t < b.t;
                              return basic_[a.row] < basic_[b.row];
                          });
                double slope = entering_slope;  // directional derivative, < 0
                for (const Break& bp : breaks_) {
                    slope += std::abs(w[bp.row]);
                    if (slope >= -1e-12) {
                        best_t = bp.t;
                        leave_row = bp.row;
                        leave_target = bp.target;
                        break;
                    }
                }
                if (leave_row < 0 && !breaks_.empty()) {
                    // slope never turned but breakpoints exist: numerical
                    // leftovers; block at the last one
                    const Break& bp = breaks_.back();
                    best_t = bp.t;
                    leave_row = bp.row;
                    leave_target = bp.target;
                }
            } else {
                // Phase 2 (and toggled-off long step): first breakpoint blocks.
                for (int i = 0; i < m_; ++i) {
                    const double wi = w[i];
                    if (std::abs(wi) <= tol_p) continue;
                    const int bj = basic_[i];
                    const double rate = -s * wi;
                    const double xi = x_[bj];
                    double target;
                    if (phase_one) {
                        if (rate > 0.0)
                            target = xi < lo_[bj] - opts_.tol_feas
                                         ? lo_[bj]
                                         : (xi <= hi_[bj] + opts_.tol_feas
                                                ? hi_[bj]
                                                : std::numeric_limits<double>::quiet_NaN());
                        else
                            target = xi > hi_[bj] + opts_.tol_feas
                                         ? hi_[bj]
                                         : (xi >= lo_[bj] - opts_.tol_feas
                                                ? lo_[bj]
                                                : std::numeric_limits<double>::quiet_NaN());
                        if (std::isnan(target)) continue;
                    } else {
                        target = rate > 0.0 ? hi_[bj] : lo_[bj];
                    }
                    if (!std::isfinite(target)) continue;
                    double t = (target - xi) / rate;
                    if (t < 0.0) t = 0.0;  // already at (or slightly past) the bound
                    if (t < best_t - 1e-15 ||
                        (t <= best_t + 1e-15 && (leave_row < 0 || bj < basic_[leave_row]))) {
                        best_t = t;
                        leave_row = i;
                        leave_target = target;
                    }
                }
            }

            const double span = hi_[enter] - lo_[enter];
            const bool flip_possible = std::isfinite(span);
            if (leave_row < 0 && !flip_possible) {
                if (phase_one)
                    fail(ErrorKind::solver, "phase 1 ray: infeasibility unbounded below");
                return finish(sol, LpStatus::unbounded);
            }

            if (flip_possible && span <= best_t) {
                // Bound flip, no basis change.
                x_[enter] += s * span;
                for (int i = 0; i < m_; ++i) x_[basic_[i]] -= s * span * w[i];
                status_[enter] = status_[enter] == kAtLower ? kAtUpper : kAtLower;
                ++iters_;
                std::fill(banned.begin(), banned.end(), 0);
                any_banned = false;
                continue;
            }

            if (std::abs(w[leave_row]) < tol_p) {
                banned[enter] = 1;  // unusable pivot; try the next candidate
                any_banned = true;
                continue;
            }

            // Pivot.
            if (best_t == 0.0) ++g_n_degen;
            const int leave = basic_[leave_row];
            x_[enter] += s * best_t;
            for (int i = 0; i < m_; ++i) x_[basic_[i]] -= s * best_t * w[i];
            x_[leave] = leave_target;  // snap to kill accumulated drift
            status_[leave] = leave_target == hi_[leave] && std::isfinite(hi_[leave]) &&
                                     !(leave_target == lo_[leave])
                                 ? kAtUpper
                                 : kAtLower;
            if (!std::isfinite(lo_[leave]) && !std::isfinite(hi_[leave])) status_[leave] = kAtFree;
            in_basis_[leave] = -1;
            basic_[leave_row] = enter;
            in_basis_[enter] = leave_row;
            status_[enter] = kBasic;
            etas_.push_back({leave_row, std::move(w)});
            ++iters_;
            if (any_banned) {
                std::fill(banned.begin(), banned.end(), 0);
                any_banned = false;
            }

            if (static_cast<int>(etas_.size()) >= opts_.refactor_every) {
                factorize();
                ScopedTimer st(g_t_other);
                compute_basics();
            }
        }
    }

private:
    double work_cost(int j) const { return j < n_work_ ? cost_[j] : 0.0; }

    double phase1_cost(int j) const {
        if (x_[j] < lo_[j] - opts_.tol_feas) return -1.0;
        if (x_[j] > hi_[j] + opts_.tol_feas) return 1.0;
        return 0.0;
    }

    double infeasibility() const {
        double worst = 0.0;
        for (int i = 0; i < m_; ++i) {
            const int j = basic_[i];
            worst = std::max(worst, std::max(lo_[j] - x_[j], x_[j] - hi_[j]));
        }
        return worst;
    }

    double total_infeasibility() const {
        double sum = 0.0;
        for (int i = 0; i < m_; ++i) {
            const int j = basic_[i];
            sum += std::max(0.0, lo_[j] - x_[j]) + std::max(0.0, x_[j] - hi_[j]);
        }
        return sum;
    }

    double current_objective() const {
        double obj = 0.0;
        for (int j = 0; j < n_work_; ++j)
            if (x_[j] != 0.0) obj += cost_[j] * x_[j];
        return obj;
    }

    // Entering score of column j with reduced cost dj: lower is better,
    // eligible only when negative. dir is the movement direction.
    bool score_of(int j, double dj, double& score, double& dir) const {
        if (lo_[j] == hi_[j]) return false;  // fixed, cannot move
        if (status_[j] == kAtLower) {
            score = dj;
            dir = 1.0;
        } else if (status_[j] == kAtUpper) {
            score = -dj;
            dir = -1.0;
        } else {
            score = -std::abs(dj);
            dir = dj > 0.0 ? -1.0 : 1.0;
        }
        return true;
    }


    int worst_var() const {
        double worst = 0.0;
        int arg = -1;
        for (int i = 0; i < m_; ++i) {
            const int j = basic_[i];
            const double v = std::max(lo_[j] - x_[j], x_[j] - hi_[j]);
            if (v > worst) {
                worst = v;
                arg = j;
            }
        }
        return arg;
    }

    // Nonbasic starting value for a column given its status.
    void place_nonbasic(int j) {
        if (status_[j] == kAtLower && !std::isfinite(lo_[j]))
            status_[j] = std::isfinite(hi_[j]) ? kAtUpper : kAtFree;
        switch (status_[j]) {
            case kAtLower: x_[j] = lo_[j]; break;
            case kAtUpper: x_[j] = hi_[j]; break;
            default: x_[j] = 0.0; break;
        }
    }

    bool init_basis() {
        if (opts_.warm == nullptr || opts_.warm->empty()) return false;
        const LpBasis& warm = *opts_.warm;
        if (static_cast<int>(warm.basic.size()) != m_ ||
            static_cast<int>(warm.at_upper.size()) != n_work_)
            return false;
        for (int j = 0; j < n_work_ + m_; ++j) status_[j] = kAtLower;
        for (int j = 0; j < n_work_; ++j)
            if (warm.at_upper[j] && std::isfinite(hi_[j])) status_[j] = kAtUpper;
        for (int i = 0; i < m_; ++i) {
            const int j = warm.basic[i];
            if (j < 0 || j >= n_work_ || in_basis_[j] >= 0) {
                reset_statuses();
                return false;
            }
            basic_[i] = j;
            in_basis_[j] = i;
            status_[j] = kBasic;
        }
        for (int j = 0; j < n_work_ + m_; ++j)
            if (status_[j] != kBasic) place_nonbasic(j);
        // Reject a singular warm basis and fall back to the cold start.
        if (m_ > 0) {
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(gather_basis());
            if (lu.rcond() < 1e-13) {
                reset_statuses();
                return false;
            }
        }
        return true;
    }

    void reset_statuses() {
        std::fill(in_basis_.begin(), in_basis_.end(), -1);
        std::fill(basic_.begin(), basic_.end(), -1);
        std::fill(status_.begin(), status_.end(), kAtLower);
    }

    // Cold start: slacks cover the ub rows, artificials the eq rows.
    void cold_basis() {
        for (int j = 0; j < n_work_ + m_; ++j) status_[j] = kAtLower;
        for (int i = 0; i < inst_.n_eq(); ++i) {
            basic_[i] = n_work_ + i;
            in_basis_[n_work_ + i] = i;
            status_[n_work_ + i] = kBasic;
        }
        for (int i = 0; i < inst_.n_ub(); ++i) {
            const int row = inst_.n_eq() + i;
            basic_[row] = n_struct_ + i;
            in_basis_[n_struct_ + i] = row;
            status_[n_struct_ + i] = kBasic;
        }
        for (int j = 0; j < n_work_ + m_; ++j)
            if (status_[j] != kBasic) place_nonbasic(j);
    }

    Eigen::MatrixXd gather_basis() const {
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m_, m_);
        for (int i = 0; i < m_; ++i) {
            const int j = basic_[i];
            if (j < n_work_)
                B.col(i) = W_.col(j);
            else
                B(j - n_work_, i) = 1.0;
        }
        return B;
    }

    void factorize() {
        ScopedTimer st(g_t_refactor);
        ++g_n_refactor;
        lu_.compute(gather_basis());
        if (m_ > 0 && lu_.rcond() < 1e-14)
            fail(ErrorKind::solver, "singular basis after refactorization");
        // A transposed copy of the packed factor keeps the BTRAN triangular
        // solves on contiguous columns: U^T lands in the lower triangle and
        // L^T (unit diagonal) in the strict upper. Solving through
        // lu_.transpose() is several times slower at this size.
        TLU_ = lu_.matrixLU().transpose();
        etas_.clear();
    }

    // x_B = B^{-1} (b - sum over nonbasic columns of W_j x_j).
    void compute_basics() {
        Eigen::VectorXd r = b_;
        for (int j = 0; j < n_work_; ++j)
            if (status_[j] != kBasic && x_[j] != 0.0) r -= W_.col(j) * x_[j];
        // nonbasic artificials are always zero
        Eigen::VectorXd xb = lu_.solve(r);
        for (int i = 0; i < m_; ++i) x_[basic_[i]] = xb[i];
    }

    Eigen::VectorXd ftran(const Eigen::VectorXd& v) const {
        Eigen::VectorXd u = lu_.solve(v);
        for (const Eta& e : etas_) {
            const double t = u[e.row] / e.d[e.row];
            u -= e.d * t;
            u[e.row] = t;
        }
        return u;
    }

    // Solves B^T y = v. With B = P^-1 L U this is U^T z = v, L^T w = z,
    // y = P^T w, done on the transposed factor copies.
    Eigen::VectorXd btran(const Eigen::VectorXd& v) const {
        Eigen::VectorXd u = v;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            const double s = it->d.dot(u) - it->d[it->row] * u[it->row];
            u[it->row] = (u[it->row] - s) / it->d[it->row];
        }
        TLU_.triangularView<Eigen::Lower>().solveInPlace(u);
        TLU_.triangularView<Eigen::UnitUpper>().solveInPlace(u);
        return lu_.permutationP().transpose() * u;
    }

    LpSolution finish(LpSolution& sol, LpStatus st) {
        sol.status = st;
        sol.iterations = iters_;
        sol.x = x_.head(n_struct_);
        sol.objective = inst_.c.dot(sol.x);
        sol.max_infeasibility = infeasibility();
        sol.worst_var = worst_var();
        sol.basis.basic = basic_;
        sol.basis.at_upper.assign(n_work_, 0);
        for (int j = 0; j < n_work_; ++j) sol.basis.at_upper[j] = status_[j] == kAtUpper;
        if (st == LpStatus::optimal) {
            Eigen::VectorXd cb(m_);
            for (int i = 0; i < m_; ++i) cb[i] = work_cost(basic_[i]);
            sol.y = btran(cb);
            sol.reduced_costs = inst_.c - (W_.leftCols(n_struct_).transpose() * sol.y);
        }
        return sol;
    }

    const LpInstance& inst_;
    const LpOptions& opts_;
    int m_ = 0, n_struct_ = 0, n_work_ = 0;
    Eigen::MatrixXd W_;
    Eigen::VectorXd b_, lo_, hi_, cost_, x_;
    std::vector<uint8_t> status_;
    std::vector<int> basic_, in_basis_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    Eigen::MatrixXd TLU_;
    std::vector<Eta> etas_;
    int iters_ = 0;
    int max_iter_ = 0;

    static constexpr int kCandidates = 64;
    static constexpr int kCandidateRefresh = 16;
    struct Break {
        double t;
        int row;
        double target;
    };
    std::vector<Break> breaks_;
    std::vector<int> candidates_;
    std::vector<std::pair<double, int>> scored_;
    int candidate_refresh_at_ = 0;
    bool last_phase_one_ = true;
    bool verified_exit_ = false;
};

}  // namespace

void LpInstance::validate() const {
    const int n = n_vars();
    if (n == 0) fail(ErrorKind::dimension, "LP has no variables");
    auto check_block = [&](const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                           const std::string& name) {
        if (A.rows() != b.size())
            fail(ErrorKind::dimension, name + " has " + std::to_string(A.rows()) +
                                           " rows but rhs has " + std::to_string(b.size()));
        if (A.rows() > 0 && A.cols() != n)
            fail(ErrorKind::dimension, name + " has " + std::to_string(A.cols()) +
                                           " columns, expected " + std::to_string(n));
        if (A.size() > 0 && !A.allFinite()) fail(ErrorKind::config, name + " contains NaN/inf");
        for (Eigen::Index i = 0; i < b.size(); ++i)
            if (std::isnan(b[i])) fail(ErrorKind::config, name + " rhs contains NaN");
    };
    check_block(A_eq, b_eq, "A_eq");
    check_block(A_ub, b_ub, "A_ub");
    if (lo.size() != n || hi.size() != n)
        fail(ErrorKind::dimension, "bounds must have one entry per variable");
    for (int j = 0; j < n; ++j) {
        if (std::isnan(lo[j]) || std::isnan(hi[j]) || std::isnan(c[j]))
            fail(ErrorKind::config, "NaN in objective or bounds at variable " + std::to_string(j));
        if (lo[j] > hi[j])
            fail(ErrorKind::config, "variable " + std::to_string(j) + " has lo > hi");
    }
}

std::string LpInstance::dump() const {
    std::ostringstream os;
    os.precision(17);
    auto name = [&](int j) {
        return j < static_cast<int>(names.size()) ? names[j] : "x" + std::to_string(j);
    };
    os << "lp " << n_vars() << " vars " << n_eq() << " eq " << n_ub() << " ub\n";
    os << "min:";
    for (int j = 0; j < n_vars(); ++j)
        if (c[j] != 0.0) os << " " << c[j] << "*" << name(j);
    os << "\n";
    for (int i = 0; i < n_eq(); ++i) {
        os << "eq" << i << ":";
        for (int j = 0; j < n_vars(); ++j)
            if (A_eq(i, j) != 0.0) os << " " << A_eq(i, j) << "*" << name(j);
        os << " = " << b_eq[i] << "\n";
    }
    for (int i = 0; i < n_ub(); ++i) {
        os << "ub" << i << ":";
        for (int j = 0; j < n_vars(); ++j)
            if (A_ub(i, j) != 0.0) os << " " << A_ub(i, j) << "*" << name(j);
        os << " <= " << b_ub[i] << "\n";
    }
    for (int j = 0; j < n_vars(); ++j)
        os << lo[j] << " <= " << name(j) << " <= " << hi[j] << "\n";
    return os.str();
}

const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
        case LpStatus::iteration_limit: return "iteration_limit";
    }
    return "unknown";
}

LpSolution solve_lp(const LpInstance& inst, const LpOptions& opts) {
    inst.validate();
    Simplex simplex(inst, opts);
    return simplex.run();
}

LpSolution solve_lp(const LpInstance& inst, double tol, int max_iter) {
    LpOptions opts;
    opts.tol_feas = tol;
    opts.max_iter = max_iter;
    return solve_lp(inst, opts);
}

}  // namespace emc
