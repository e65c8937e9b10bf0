#pragma once

#include <string>

#include <Eigen/Dense>

#include "emc/mdp.hpp"
#include "emc/mp.hpp"

// Self-contained SVG renderers. Output is plain deterministic text so plots
// can be golden-file tested and diffed.
namespace emc::svg {

// Probability heatmap of a column-stochastic matrix: cell (row alpha, column
// beta) shaded by P(alpha <- beta), with a vertical colorbar. Cells carry the
// value in a data-value attribute.
std::string matrix_heatmap(const Eigen::MatrixXd& probs, const std::string& title);

// Per-state expected power trajectories p^alpha * rho_t^alpha with a state
// legend; the curves sum to the total expected power series. Each polyline
// carries its series in a data-values attribute.
std::string power_trajectory(const MdpSolution& sol, const Eigen::VectorXd& p_alpha,
                             const std::string& title);

}  // namespace emc::svg
