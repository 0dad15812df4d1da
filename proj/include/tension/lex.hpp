// ============================================================================
// tension/lex.hpp — lexicographically preferred subbases and the two
// nonmonotonic inference relations
// ============================================================================
//
// A subbase A of a stratified base is compared to B by the per-stratum
// cardinality vector [|A_1|, ..., |A_n|], most specific stratum first. The
// preferred subbases for a context are the consistent ones no consistent
// subbase lexicographically dominates; skeptical inference quantifies over
// the whole family.
// ============================================================================

#ifndef TENSION_LEX_HPP
#define TENSION_LEX_HPP

#include "tension/defaults.hpp"
#include "tension/formula.hpp"
#include "tension/state.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace tension {

/// A subbase as a sorted vector of rule ids into a StratifiedBase.
using Subbase = std::vector<std::size_t>;

enum class LexOrder { FirstPreferred, SecondPreferred, Tie };

/// Per-stratum cardinalities [|A_1|, ..., |A_n|] of a subbase.
std::vector<std::size_t> cardinality_vector(const Subbase& a, const StratifiedBase& base);

/// Lexicographic comparison of cardinality vectors from the most specific
/// stratum upward.
LexOrder lex_compare(const Subbase& a, const Subbase& b, const StratifiedBase& base);

struct LexOptions {
    /// The branch-and-bound search throws ExplosionLimit when it would retain
    /// more partial selections than this.
    std::size_t partial_cap = 10000;
};

/// Every preferred subbase shares the one maximal cardinality vector.
struct SubbaseFamily {
    std::vector<Subbase> subbases;     // sorted lexicographically
    std::vector<std::size_t> counts;   // the shared cardinality vector
};

/// ALL subbases A with str(A) + context consistent and no consistent
/// competitor preferred to A. Stratum-by-stratum branch and bound: pick the
/// largest k whose k-subsets extend some retained partial consistently, keep
/// every such extension, recurse. An inconsistent context yields an empty
/// family.
SubbaseFamily lex_preferred_subbases(const StratifiedBase& base,
                                     const std::vector<Formula>& context,
                                     const LexOptions& options = {});

/// One query context, resolved once and reusable: holds its own copy of the
/// base, the encoded context, and the preferred family. Detectors that ask
/// several entailment questions against one context (curiosity asks two,
/// the suspense scan up to four per disclosure) resolve the family a single
/// time this way. Construction throws ExplosionLimit like the free search.
class LexQuery {
public:
    LexQuery(StratifiedBase base, std::vector<Formula> context,
             const LexOptions& options = {});
    ~LexQuery();
    LexQuery(LexQuery&&) noexcept;
    LexQuery& operator=(LexQuery&&) noexcept;

    /// False when the context itself is unsatisfiable (empty family).
    bool context_consistent() const;

    const SubbaseFamily& family() const;

    /// Skeptical entailment: every preferred subbase, with the context,
    /// entails beta. False on an inconsistent context.
    bool entails(const Formula& beta);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// alpha |=_Delta beta: alpha is consistent and every preferred
/// alpha-consistent subbase A satisfies str(A) + {alpha} |= beta.
bool lex_entails(const StratifiedBase& base, const Formula& alpha, const Formula& beta,
                 const LexOptions& options = {});

/// alpha |=_B beta: {alpha} with the state's facts and strict rules is
/// consistent, and every subbase preferred for that context entails beta
/// together with it. Returns false whenever facts plus strict rules are
/// already inconsistent (see diagnose()). Throws InconsistentDefaultBase when
/// the state's defaults admit no stratification.
bool entails_b(const EpistemicState& state, const Formula& alpha, const Formula& beta,
               const LexOptions& options = {});

/// The shortcut |=_B beta, i.e. entails_b with premise true.
bool entails_b(const EpistemicState& state, const Formula& beta,
               const LexOptions& options = {});

/// Same as entails_b but with the stratification precomputed by the caller;
/// the stratification must be of state.defaults. Lets detectors that issue
/// many queries against one state stratify once.
bool entails_b_with(const StratifiedBase& base, const EpistemicState& state,
                    const Formula& alpha, const Formula& beta,
                    const LexOptions& options = {});

} // namespace tension

#endif
