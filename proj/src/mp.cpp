#include "emc/mp.hpp"

#include <algorithm>
#include <cmath>

#include "emc/errors.hpp"

namespace emc {

namespace {

// Bin index for a value over [lo, hi) split into n uniform bins. Values
// exactly on an interior edge land in the upper bin, values outside clamp.
int bin_index(double v, double lo, double hi, int n, int64_t& clamped) {
    const double width = (hi - lo) / n;
    const int idx = static_cast<int>(std::floor((v - lo) / width));
    if (idx < 0) {
        ++clamped;
        return 0;
    }
    if (idx >= n) {
        if (v > hi) ++clamped;  // v == hi belongs to the top bin, not a clamp
        return n - 1;
    }
    return idx;
}

const std::vector<double>& power_column(const SimulationTrace& trace, PowerVar v) {
    return v == PowerVar::heat_pump ? trace.p_hp : trace.p_a;
}

// Communicating classes of the nonzero structure (Kosaraju on the directed
// graph beta -> alpha whenever probs(alpha, beta) > 0).
std::vector<int> communicating_classes(const Eigen::MatrixXd& probs, int& n_classes) {
    const int S = static_cast<int>(probs.rows());
    std::vector<std::vector<int>> fwd(S), rev(S);
    for (int b = 0; b < S; ++b)
        for (int a = 0; a < S; ++a)
            if (probs(a, b) > 0.0) {
                fwd[b].push_back(a);
                rev[a].push_back(b);
            }

    std::vector<int> order;
    order.reserve(S);
    std::vector<uint8_t> seen(S, 0);
    for (int start = 0; start < S; ++start) {
        if (seen[start]) continue;
        // iterative DFS with explicit post-order
        std::vector<std::pair<int, size_t>> stack{{start, 0}};
        seen[start] = 1;
        while (!stack.empty()) {
            auto& [node, child] = stack.back();
            if (child < fwd[node].size()) {
                const int next = fwd[node][child++];
                if (!seen[next]) {
                    seen[next] = 1;
                    stack.push_back({next, 0});
                }
            } else {
                order.push_back(node);
                stack.pop_back();
            }
        }
    }

    std::vector<int> cls(S, -1);
    n_classes = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (cls[*it] >= 0) continue;
        std::vector<int> stack{*it};
        cls[*it] = n_classes;
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            for (int prev : rev[node])
                if (cls[prev] < 0) {
                    cls[prev] = n_classes;
                    stack.push_back(prev);
                }
        }
        ++n_classes;
    }
    return cls;
}

}  // namespace

const char* to_string(PowerVar v) {
    return v == PowerVar::heat_pump ? "heat_pump" : "auxiliary";
}

const char* to_string(BinMode m) { return m == BinMode::product ? "product" : "marginal"; }

bool BinningSpec::has_ranges() const {
    return !std::isnan(temp_lo) && !std::isnan(temp_hi) && !std::isnan(power_lo) &&
           !std::isnan(power_hi);
}

void BinningSpec::validate() const {
    if (mode == BinMode::marginal && n_temp_bins != 1)
        fail(ErrorKind::config, "marginal mode requires n_temp_bins = 1");
    if (n_power_bins < 2)
        fail(ErrorKind::config, "n_power_bins must be at least 2");
    if (mode == BinMode::product && n_temp_bins < 2)
        fail(ErrorKind::config, "product mode requires n_temp_bins >= 2");
    if (temp_state < 0) fail(ErrorKind::config, "temp_state must be nonnegative");
    if (has_ranges()) {
        if (!(temp_lo < temp_hi)) fail(ErrorKind::config, "temperature range must have lo < hi");
        if (!(power_lo < power_hi)) fail(ErrorKind::config, "power range must have lo < hi");
    }
}

void TransitionMatrix::validate() const {
    const int S = n_states();
    if (counts.rows() != S || counts.cols() != S)
        fail(ErrorKind::dimension, "counts and probs dimensions differ");
    if (S != bins.n_states())
        fail(ErrorKind::dimension, "matrix size does not match the binning spec");
    int64_t total = 0;
    for (int b = 0; b < S; ++b) {
        double sum = 0.0;
        for (int a = 0; a < S; ++a) {
            const double p = probs(a, b);
            if (p < 0.0) fail(ErrorKind::config, "negative probability at (" + std::to_string(a) +
                                                     "," + std::to_string(b) + ")");
            if (counts(a, b) < 0) fail(ErrorKind::config, "negative count");
            sum += p;
            total += counts(a, b);
        }
        if (std::abs(sum - 1.0) > 1e-12)
            fail(ErrorKind::config, "column " + std::to_string(b) + " sums to " +
                                        std::to_string(sum) + ", not 1");
    }
    if (total != n_transitions)
        fail(ErrorKind::config, "counts sum to " + std::to_string(total) + ", expected " +
                                    std::to_string(n_transitions));
}

BinningSpec resolve_ranges(BinningSpec spec, const std::vector<SimulationTrace>& traces) {
    spec.validate();
    if (traces.empty()) fail(ErrorKind::config, "no traces to derive bin ranges from");
    if (spec.has_ranges()) return spec;

    double t_lo = std::numeric_limits<double>::infinity(), t_hi = -t_lo;
    double p_lo = t_lo, p_hi = -t_lo;
    for (const SimulationTrace& trace : traces) {
        if (spec.temp_state >= trace.t_sh.cols())
            fail(ErrorKind::dimension, "temp_state " + std::to_string(spec.temp_state) +
                                           " out of range for trace with " +
                                           std::to_string(trace.t_sh.cols()) + " states");
        t_lo = std::min(t_lo, trace.t_sh.col(spec.temp_state).minCoeff());
        t_hi = std::max(t_hi, trace.t_sh.col(spec.temp_state).maxCoeff());
        const auto& power = power_column(trace, spec.power_var);
        for (double p : power) {
            p_lo = std::min(p_lo, p);
            p_hi = std::max(p_hi, p);
        }
    }
    // constant series still need a nonempty range
    if (t_hi - t_lo < 1e-9) {
        t_lo -= 0.5;
        t_hi += 0.5;
    }
    if (p_hi - p_lo < 1e-9) {
        p_lo -= 0.05;
        p_hi += 0.05;
    }
    if (std::isnan(spec.temp_lo)) spec.temp_lo = t_lo;
    if (std::isnan(spec.temp_hi)) spec.temp_hi = t_hi;
    if (std::isnan(spec.power_lo)) spec.power_lo = p_lo;
    if (std::isnan(spec.power_hi)) spec.power_hi = p_hi;
    spec.validate();
    return spec;
}

StateIndexSequence discretize(const SimulationTrace& trace, const BinningSpec& bins) {
    bins.validate();
    if (!bins.has_ranges())
        fail(ErrorKind::config, "binning ranges not resolved; call resolve_ranges first");
    if (trace.n_steps() == 0) fail(ErrorKind::config, "cannot discretize an empty trace");
    if (bins.temp_state >= trace.t_sh.cols())
        fail(ErrorKind::dimension, "temp_state out of range");

    StateIndexSequence seq;
    seq.S = bins.n_states();
    seq.idx.resize(trace.n_steps());
    const auto& power = power_column(trace, bins.power_var);
    for (int t = 0; t < trace.n_steps(); ++t) {
        const int it = bins.n_temp_bins == 1
                           ? 0
                           : bin_index(trace.t_sh(t, bins.temp_state), bins.temp_lo,
                                       bins.temp_hi, bins.n_temp_bins, seq.clamped);
        const int ip =
            bin_index(power[t], bins.power_lo, bins.power_hi, bins.n_power_bins, seq.clamped);
        seq.idx[t] = it * bins.n_power_bins + ip;
    }
    return seq;
}

CountMatrix count_transitions(const std::vector<StateIndexSequence>& seqs, int S) {
    CountMatrix counts = CountMatrix::Zero(S, S);
    for (const StateIndexSequence& seq : seqs) {
        if (seq.S != S)
            fail(ErrorKind::dimension, "sequence built for " + std::to_string(seq.S) +
                                           " states, counting over " + std::to_string(S));
        for (size_t t = 0; t + 1 < seq.idx.size(); ++t) {
            const int from = seq.idx[t];
            const int to = seq.idx[t + 1];
            if (from < 0 || from >= S || to < 0 || to >= S)
                fail(ErrorKind::dimension, "state index out of range");
            counts(to, from) += 1;  // column = source state
        }
    }
    return counts;
}

TransitionMatrix normalize(const CountMatrix& counts, const BinningSpec& bins,
                           FallbackPolicy fallback) {
    if (counts.rows() != counts.cols()) fail(ErrorKind::dimension, "counts must be square");
    const int S = static_cast<int>(counts.rows());
    if (S != bins.n_states())
        fail(ErrorKind::dimension, "counts size does not match the binning spec");

    TransitionMatrix tm;
    tm.bins = bins;
    tm.counts = counts;
    tm.probs = Eigen::MatrixXd::Zero(S, S);
    tm.n_transitions = counts.sum();
    for (int b = 0; b < S; ++b) {
        const int64_t col_sum = counts.col(b).sum();
        if (col_sum == 0) {
            // never-visited source state: hold it in place rather than invent
            // transitions out of it
            (void)fallback;  // self_loop is the only policy
            tm.probs(b, b) = 1.0;
            tm.fallback_states.push_back(b);
            continue;
        }
        for (int a = 0; a < S; ++a)
            if (counts(a, b) > 0)
                tm.probs(a, b) = static_cast<double>(counts(a, b)) / static_cast<double>(col_sum);
    }

    tm.state_power.resize(S);
    tm.state_temp.resize(S);
    const double pw = (bins.power_hi - bins.power_lo) / bins.n_power_bins;
    const double tw = (bins.temp_hi - bins.temp_lo) / bins.n_temp_bins;
    for (int a = 0; a < S; ++a) {
        const int it = a / bins.n_power_bins;
        const int ip = a % bins.n_power_bins;
        tm.state_power[a] = bins.power_lo + (ip + 0.5) * pw;
        tm.state_temp[a] = bins.temp_lo + (it + 0.5) * tw;
    }
    return tm;
}

TransitionMatrix build_transition_matrix(const std::vector<SimulationTrace>& traces,
                                         const BinningSpec& spec, FallbackPolicy fallback) {
    const BinningSpec resolved = resolve_ranges(spec, traces);
    std::vector<StateIndexSequence> seqs;
    seqs.reserve(traces.size());
    int64_t clamped = 0;
    for (const SimulationTrace& trace : traces) {
        seqs.push_back(discretize(trace, resolved));
        clamped += seqs.back().clamped;
    }
    CountMatrix counts = count_transitions(seqs, resolved.n_states());
    TransitionMatrix tm = normalize(counts, resolved, fallback);
    tm.n_traces = static_cast<int64_t>(traces.size());
    tm.clamped = clamped;
    tm.validate();
    return tm;
}

ValidationReport validate_matrix(const TransitionMatrix& tm) {
    ValidationReport report;
    const int S = tm.n_states();
    report.n_states = S;
    report.clamped = tm.clamped;
    report.n_transitions = tm.n_transitions;
    report.n_traces = tm.n_traces;
    report.fallback_states = tm.fallback_states;

    int64_t nonzero = 0;
    double diag = 0.0;
    for (int b = 0; b < S; ++b) {
        report.max_column_residual =
            std::max(report.max_column_residual, std::abs(tm.probs.col(b).sum() - 1.0));
        for (int a = 0; a < S; ++a)
            if (tm.probs(a, b) > 0.0) ++nonzero;
        diag += tm.probs(b, b);
    }
    report.density = static_cast<double>(nonzero) / (static_cast<double>(S) * S);
    report.diagonal_mass = diag / S;

    std::vector<int> cls = communicating_classes(tm.probs, report.n_classes);
    // a class is closed when no probability leaves it
    std::vector<uint8_t> closed(report.n_classes, 1);
    for (int b = 0; b < S; ++b)
        for (int a = 0; a < S; ++a)
            if (tm.probs(a, b) > 0.0 && cls[a] != cls[b]) closed[cls[b]] = 0;
    for (uint8_t c : closed) report.n_closed_classes += c;
    report.irreducible = report.n_classes == 1;

    if (report.irreducible) {
        // power iteration for the stationary distribution
        Eigen::VectorXd pi = Eigen::VectorXd::Constant(S, 1.0 / S);
        const int max_iter = 100000;
        for (int it = 0; it < max_iter; ++it) {
            Eigen::VectorXd next = tm.probs * pi;
            next /= next.sum();
            const double delta = (next - pi).cwiseAbs().maxCoeff();
            pi = next;
            report.stationary_iterations = it + 1;
            if (delta < 1e-10) break;
        }
        report.stationary = pi;
    }
    return report;
}

}  // namespace emc
