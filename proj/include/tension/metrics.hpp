// ============================================================================
// tension/metrics.hpp — causal graph and the three intensity measures
// ============================================================================

#ifndef TENSION_METRICS_HPP
#define TENSION_METRICS_HPP

#include "tension/formula.hpp"
#include "tension/lex.hpp"
#include "tension/state.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <utility>

namespace tension {

// ── Causal graph ────────────────────────────────────────────────────────────

struct CausalGraph {
    std::set<TimedAtom> nodes;
    std::set<std::pair<TimedAtom, TimedAtom>> edges; // directed, no self-loops

    bool operator==(const CausalGraph&) const = default;
};

struct EdgeFilterConfig {
    /// Drop strict edges that hold only vacuously: premises inconsistent
    /// with the facts and strict rules, or targets those already entail on
    /// their own. Without the filter, states with known facts connect
    /// everything to everything.
    bool non_vacuous = true;

    /// Keep only strict edges pointing forward in time (t < t').
    bool forward_only = true;
};

/// Nodes are every atom occurring in the facts, strict rules, or rule
/// materials. Edges come from two sources: every
/// (antecedent atom, consequent atom) pair of a default rule, and the strict
/// pairs where some literal over the source atom entails a literal over the
/// target atom together with facts and strict rules, subject to the filter.
CausalGraph causal_graph(const EpistemicState& state, const EdgeFilterConfig& config = {});

/// Total degree (in + out). The node must be in the graph.
std::size_t degree(const CausalGraph& graph, const TimedAtom& node);

/// Sum of degrees over the atoms of phi; atoms absent from the graph
/// contribute zero.
std::size_t degree_sum(const CausalGraph& graph, const Formula& phi);

/// Curiosity intensity: sum of degrees of phi's atoms in the causal graph of
/// the full state (not the state until t). Throws NotCurious unless the
/// agent is curious about phi at t. For the bare measure over an arbitrary
/// graph, use degree_sum.
std::size_t curiosity_intensity(const EpistemicState& state, const Formula& phi, int t,
                                const EdgeFilterConfig& config = {},
                                const LexOptions& options = {});

/// DOT rendering with stable `name_t` node identifiers; nodes and edges are
/// emitted in lexicographic order.
std::string to_dot(const CausalGraph& graph);

// ── Suspense intensity ──────────────────────────────────────────────────────

/// Trapezoid profile: rise to the peak over `rise` time units, hold for
/// `plateau`, descend to zero over `descent`.
struct SuspenseProfile {
    double rise = 1;     // alpha > 0
    double plateau = 0;  // beta >= 0
    double descent = 1;  // gamma > 0
    double peak = 0;     // SMAX >= 0
};

/// Piecewise intensity at time t for a curiosity level c first felt at
/// onset: 0 before onset, linear from c to the peak over the rise, the peak
/// across the plateau, linear back to 0 over the descent, then 0.
double suspense_intensity(const SuspenseProfile& profile, double curiosity_level,
                          double onset, double t);

// ── Surprise intensity ──────────────────────────────────────────────────────

/// n - i where i is the most specific stratum holding a rule the surprising
/// formula violates: the premise joined with the rule antecedent stays
/// consistent with facts and strict rules yet entails the negated
/// consequent. Throws NotSurprised when the precondition fails and
/// NoViolatedRule when no stratum qualifies.
std::size_t surprise_intensity(const EpistemicState& state, const Formula& phi, int t,
                               const LexOptions& options = {});

} // namespace tension

#endif
