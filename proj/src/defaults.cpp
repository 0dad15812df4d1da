#include "tension/defaults.hpp"

#include "tension/errors.hpp"
#include "tension/solver.hpp"

#include <algorithm>

namespace tension {

DefaultRule::DefaultRule(Formula ante, Formula cons)
    : antecedent(std::move(ante)), consequent(std::move(cons)) {
    if (antecedent.kind() == Connective::Bottom)
        throw Error("default rule with antecedent 'false' can never fire: " + str());
}

std::vector<Formula> strict(const std::vector<DefaultRule>& rules) {
    std::vector<Formula> out;
    out.reserve(rules.size());
    for (const DefaultRule& r : rules) out.push_back(r.material());
    return out;
}

bool tolerated(const DefaultRule& r, const std::vector<DefaultRule>& rules) {
    std::vector<Formula> gamma;
    gamma.reserve(rules.size() + 2);
    gamma.push_back(r.antecedent);
    gamma.push_back(r.consequent);
    for (const DefaultRule& other : rules) gamma.push_back(other.material());
    return is_consistent(gamma);
}

std::vector<DefaultRule> StratifiedBase::stratum(std::size_t i) const {
    std::vector<DefaultRule> out;
    for (std::size_t id : strata_.at(i)) out.push_back(rules_[id]);
    return out;
}

std::size_t StratifiedBase::stratum_of(std::size_t rule_id) const {
    return stratum_of_.at(rule_id);
}

StratifiedBase stratify(std::vector<DefaultRule> rules) {
    // Set semantics: collapse structural duplicates, keeping first occurrence.
    std::vector<DefaultRule> unique;
    for (DefaultRule& r : rules) {
        if (std::find(unique.begin(), unique.end(), r) == unique.end())
            unique.push_back(std::move(r));
    }

    std::vector<std::vector<DefaultRule>> peeled; // least specific first
    std::vector<DefaultRule> remaining = std::move(unique);
    while (!remaining.empty()) {
        std::vector<DefaultRule> layer;
        std::vector<DefaultRule> rest;
        for (const DefaultRule& r : remaining) {
            // Tolerance by the whole remaining set; including r itself is
            // harmless since ante & cons already entail r's material.
            if (tolerated(r, remaining))
                layer.push_back(r);
            else
                rest.push_back(r);
        }
        if (layer.empty())
            throw InconsistentDefaultBase(
                "no remaining rule is tolerated by the rest; the default base "
                "admits no Z stratification (" +
                std::to_string(remaining.size()) + " rules left)");
        peeled.push_back(std::move(layer));
        remaining = std::move(rest);
    }

    StratifiedBase base;
    for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
        std::vector<std::size_t> ids;
        for (DefaultRule& r : *it) {
            ids.push_back(base.rules_.size());
            base.stratum_of_.push_back(base.strata_.size());
            base.rules_.push_back(std::move(r));
        }
        base.strata_.push_back(std::move(ids));
    }
    return base;
}

} // namespace tension
