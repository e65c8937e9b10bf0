#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "emc/schedule.hpp"

namespace emc {

using CountMatrix = Eigen::Matrix<int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Which trace power column defines the independent state variable.
enum class PowerVar { heat_pump, auxiliary };

// product: states are (temperature bin, power bin) pairs, S = n*m.
// marginal: temperature marginalized away (n = 1), S = m; this is the mode
// that reproduces the small published cardinalities (10/17/14/32).
enum class BinMode { product, marginal };

const char* to_string(PowerVar v);
const char* to_string(BinMode m);

struct BinningSpec {
    PowerVar power_var = PowerVar::heat_pump;
    BinMode mode = BinMode::product;
    int temp_state = 0;  // trace temperature column; default day-zone air
    int n_temp_bins = 10;
    int n_power_bins = 10;
    // NaN = derive from the trace ensemble (min/max over all traces).
    double temp_lo = kAuto, temp_hi = kAuto;
    double power_lo = kAuto, power_hi = kAuto;

    static constexpr double kAuto = std::numeric_limits<double>::quiet_NaN();
    static constexpr int d = 2;  // dimensionality of the reduced state space

    int n_states() const { return n_temp_bins * n_power_bins; }
    bool has_ranges() const;
    void validate() const;
};

// Composite state index sequence for one trace: alpha = i_temp * m + i_power.
struct StateIndexSequence {
    std::vector<int> idx;
    int S = 0;
    int64_t clamped = 0;  // samples outside the bin range, clamped to edge bins
};

struct TransitionMatrix {
    Eigen::MatrixXd probs;  // S x S, column-stochastic; probs(a,b) = P(a <- b)
    CountMatrix counts;     // raw transition counts, same orientation
    BinningSpec bins;       // with resolved (non-auto) ranges
    std::vector<double> state_power;  // p^alpha, power bin midpoint, kW
    std::vector<double> state_temp;   // representative temperature, degC
    int64_t n_traces = 0;
    int64_t n_transitions = 0;
    int64_t clamped = 0;
    std::vector<int> fallback_states;  // never-visited sources given self-loops

    int n_states() const { return static_cast<int>(probs.rows()); }
    void validate() const;  // column sums, nonnegativity, count consistency
};

enum class FallbackPolicy {
    self_loop,  // empty column beta gets probs(beta,beta) = 1
};

struct ValidationReport {
    int n_states = 0;
    double max_column_residual = 0.0;  // max |column sum - 1| over columns
    double density = 0.0;              // fraction of nonzero entries
    double diagonal_mass = 0.0;        // mean of probs(a,a)
    int n_classes = 0;                 // communicating classes
    int n_closed_classes = 0;
    bool irreducible = false;
    std::optional<Eigen::VectorXd> stationary;  // power iteration, when irreducible
    int stationary_iterations = 0;
    int64_t clamped = 0;
    int64_t n_transitions = 0;
    int64_t n_traces = 0;
    std::vector<int> fallback_states;
};

// Fills auto ranges from the min/max of the relevant trace columns over the
// whole ensemble. Degenerate (constant) columns get a half-degree margin.
BinningSpec resolve_ranges(BinningSpec spec, const std::vector<SimulationTrace>& traces);

// Uniform 2-D binning of one trace. Values exactly on an interior edge go to
// the upper bin; values outside the range clamp to the edge bins and count.
StateIndexSequence discretize(const SimulationTrace& trace, const BinningSpec& bins);

// Pools consecutive-pair counts over all sequences; no cross-sequence pairs,
// no time dependence.
CountMatrix count_transitions(const std::vector<StateIndexSequence>& seqs, int S);

// Column-normalizes counts into the transition matrix.
TransitionMatrix normalize(const CountMatrix& counts, const BinningSpec& bins,
                           FallbackPolicy fallback = FallbackPolicy::self_loop);

// End-to-end: resolve ranges, discretize every trace, count, normalize.
TransitionMatrix build_transition_matrix(const std::vector<SimulationTrace>& traces,
                                         const BinningSpec& spec,
                                         FallbackPolicy fallback = FallbackPolicy::self_loop);

// Structural diagnostics; reports, never throws.
ValidationReport validate_matrix(const TransitionMatrix& tm);

}  // namespace emc
