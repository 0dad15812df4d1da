// ============================================================================
// tension/agent.hpp — the listener model and the three tension detectors
// ============================================================================

#ifndef TENSION_AGENT_HPP
#define TENSION_AGENT_HPP

#include "tension/formula.hpp"
#include "tension/lex.hpp"
#include "tension/state.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tension {

/// Restriction of a state to time points <= t: keeps the facts and strict
/// rules whose atoms all carry indices <= t, and the defaults whose material
/// translation does. t = -1 is allowed and yields no facts at all plus the
/// atom-free strict and default rules; the surprise detector needs it at
/// t = 0.
EpistemicState until(const EpistemicState& state, int t);

/// Least fixpoint of name awareness: seeded by the names occurring in the
/// facts; any strict rule or rule material containing an aware name makes
/// all of its names aware.
std::set<std::string> aware_names(const EpistemicState& state);

/// Aware of a formula: aware of every name occurring in it. Formulas without
/// atoms qualify vacuously.
bool aware_of(const EpistemicState& state, const Formula& phi);

/// Curious about phi at t: the state until t is well-formed, aware of phi,
/// and can derive neither phi nor its negation.
bool curious(const EpistemicState& state, const Formula& phi, int t,
             const LexOptions& options = {});

// ── Fluent queries ──────────────────────────────────────────────────────────

/// A formula over bare variable symbols with one symbolic time slot;
/// instantiate(t) indexes every atom at t. Suspense works on these because
/// the question "empty?" gets re-asked at later time points.
class FluentQuery {
public:
    /// Parses template syntax: atoms are bare identifiers, e.g. "empty" or
    /// "empty & !visible".
    static FluentQuery parse_template(std::string_view text);

    /// Wraps a formula whose atoms are all indexed at 0.
    explicit FluentQuery(Formula zero_indexed);

    Formula instantiate(int t) const;
    std::string str() const;

    bool operator==(const FluentQuery& other) const { return slot_ == other.slot_; }

private:
    Formula slot_; // every atom at index 0
};

// ── Suspense ────────────────────────────────────────────────────────────────

struct WitnessSearchConfig {
    /// Candidate disclosures are conjunctions of at most this many literals
    /// over distinct future atoms of aware variables.
    std::size_t max_conjuncts = 2;
    LexOptions lex;
};

struct SuspenseWitness {
    Formula psi;    ///< consistent future disclosure, atoms strictly after t
    int t_prime;    ///< the time point the query gets settled at
    bool positive;  ///< true when phi_{t'} became entailed, false for its negation

    bool operator==(const SuspenseWitness& other) const {
        return psi == other.psi && t_prime == other.t_prime && positive == other.positive;
    }
};

/// First witness, in deterministic search order, that the agent feels
/// suspense about the query at t: the agent is curious about the query
/// instantiated at t, the disclosure is consistent with what is known until
/// t, and adding it settles the query at some later time point. Candidates
/// are ordered by max time index, then size, then lexicographically; for one
/// candidate, smaller t' first and the positive polarity before the negative.
std::optional<SuspenseWitness> find_suspense(const EpistemicState& state,
                                             const FluentQuery& query, int t,
                                             const WitnessSearchConfig& config = {});

/// Every witness in the search space, in the same deterministic order.
std::vector<SuspenseWitness> suspense_witnesses(const EpistemicState& state,
                                                const FluentQuery& query, int t,
                                                const WitnessSearchConfig& config = {});

// ── Surprise ────────────────────────────────────────────────────────────────

/// Surprised about phi at t: phi is one of the facts with indices <= t
/// (structural membership), the state until t is well-formed, and the state
/// with facts rolled back to t-1 but rules until t expected the negation.
bool surprised(const EpistemicState& state, const Formula& phi, int t,
               const LexOptions& options = {});

} // namespace tension

#endif
