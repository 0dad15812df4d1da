#ifndef TENSION_STATE_HPP
#define TENSION_STATE_HPP

#include "tension/defaults.hpp"
#include "tension/formula.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tension {

/// The listener: facts F, strict rules B_L, default rules B_Delta, plus the
/// declared time horizon N. Immutable value type; all queries over it are
/// pure.
struct EpistemicState {
    std::vector<Formula> facts;
    std::vector<Formula> strict_rules;
    std::vector<DefaultRule> defaults;
    int horizon = 0;
};

/// Well-formed: facts plus strict rules are classically consistent and the
/// default base admits a Z stratification.
bool well_formed(const EpistemicState& state);

/// Human-readable reason the state is not well-formed, or nullopt.
std::optional<std::string> diagnose(const EpistemicState& state);

} // namespace tension

#endif
