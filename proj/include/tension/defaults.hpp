// ============================================================================
// tension/defaults.hpp — default rules and System Z stratification
// ============================================================================

#ifndef TENSION_DEFAULTS_HPP
#define TENSION_DEFAULTS_HPP

#include "tension/formula.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace tension {

/// A defeasible rule `antecedent ~> consequent`: when the antecedent holds,
/// the consequent is more plausible than its negation.
struct DefaultRule {
    Formula antecedent;
    Formula consequent;

    /// A rule whose antecedent is the constant false can never fire and is
    /// rejected outright.
    DefaultRule(Formula ante, Formula cons);

    /// Material counterpart ¬antecedent | consequent (the str translation).
    Formula material() const { return Formula::disjunction(!antecedent, consequent); }

    std::string str() const { return antecedent.str() + " ~> " + consequent.str(); }

    bool operator==(const DefaultRule& other) const {
        return antecedent == other.antecedent && consequent == other.consequent;
    }
};

/// str: material counterparts of a rule set, in rule order.
std::vector<Formula> strict(const std::vector<DefaultRule>& rules);

/// Tolerance test: antecedent & consequent of r, conjoined with the material
/// counterparts of every rule in `rules`, is satisfiable.
bool tolerated(const DefaultRule& r, const std::vector<DefaultRule>& rules);

/// Specificity-ordered partition of a default base. Stratum 0 holds the most
/// specific rules; numbering follows the usual Z convention where the last
/// stratum is the least specific.
class StratifiedBase {
public:
    std::size_t stratum_count() const { return strata_.size(); }

    /// All rules, id order. Ids are stratum-major: every rule of stratum i
    /// precedes every rule of stratum i+1; within a stratum, input order.
    const std::vector<DefaultRule>& rules() const { return rules_; }

    /// Rule ids per stratum; index 0 is the most specific stratum.
    const std::vector<std::vector<std::size_t>>& strata() const { return strata_; }

    std::vector<DefaultRule> stratum(std::size_t i) const;
    std::size_t stratum_of(std::size_t rule_id) const;

private:
    friend StratifiedBase stratify(std::vector<DefaultRule> rules);

    std::vector<DefaultRule> rules_;
    std::vector<std::vector<std::size_t>> strata_;
    std::vector<std::size_t> stratum_of_;
};

/// System Z: iteratively peel the rules tolerated by everything that
/// remains. The peeling extracts least-specific layers first; the result is
/// reversed so stratum 0 is the most specific layer. Structural duplicates
/// in the input are collapsed. Throws InconsistentDefaultBase when some
/// iteration tolerates nothing.
StratifiedBase stratify(std::vector<DefaultRule> rules);

} // namespace tension

#endif
