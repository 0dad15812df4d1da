// Shared fixtures, independent oracles, and random generators for the test
// suites. The oracles here deliberately take the dumb route (exhaustive
// enumeration) so the engine's clever route has something honest to answer
// to.

#ifndef TENSION_TESTS_SUPPORT_HPP
#define TENSION_TESTS_SUPPORT_HPP

#include "tension/agent.hpp"
#include "tension/defaults.hpp"
#include "tension/formula.hpp"
#include "tension/lex.hpp"
#include "tension/state.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

inline tension::Formula at(const std::string& name, int t) {
    return tension::Formula::atom(name, t);
}

// ── The box fixture ─────────────────────────────────────────────────────────
// Six names, horizon 3, 27 defaults, 6 closed-world axioms.

inline std::vector<tension::DefaultRule> box_defaults() {
    using tension::DefaultRule;
    std::vector<DefaultRule> rules;
    for (int t = 0; t < 3; ++t) {
        rules.push_back(DefaultRule((at("A", t) || at("E", t)) && !at("box", t), at("box", t + 1)));
        rules.push_back(DefaultRule(at("C", t) && !at("visible", t), at("visible", t + 1)));
        rules.push_back(DefaultRule(at("C", t) && !at("visible", t) && at("empty", t),
                                    !at("visible", t + 1)));
    }
    for (const char* v : {"box", "empty", "visible"}) {
        for (int t = 0; t < 3; ++t) {
            rules.push_back(DefaultRule(at(v, t), at(v, t + 1)));
            rules.push_back(DefaultRule(!at(v, t), !at(v, t + 1)));
        }
    }
    return rules;
}

inline std::vector<tension::Formula> box_cwa() {
    std::vector<tension::Formula> axioms;
    for (int t = 0; t < 3; ++t) {
        axioms.push_back(tension::Formula::implication(!at("box", t) && at("box", t + 1),
                                                       at("A", t) || at("E", t)));
        axioms.push_back(
            tension::Formula::implication(!at("visible", t) && at("visible", t + 1), at("C", t)));
    }
    return axioms;
}

inline tension::EpistemicState box_state(std::vector<tension::Formula> facts) {
    tension::EpistemicState state;
    state.facts = std::move(facts);
    state.strict_rules = box_cwa();
    state.defaults = box_defaults();
    state.horizon = 3;
    return state;
}

// ── Exhaustive lex oracle ───────────────────────────────────────────────────
// Enumerates all 2^|rules| subsets, keeps the context-consistent ones, and
// selects the lexicographically maximal cardinality vector by pairwise
// comparison. Usable up to a dozen rules or so.

struct OracleFamily {
    std::vector<tension::Subbase> subbases;
    std::vector<std::size_t> counts;
};

inline OracleFamily oracle_preferred(const tension::StratifiedBase& base,
                                     const std::vector<tension::Formula>& context) {
    const auto& rules = base.rules();
    const std::size_t n = rules.size();

    std::vector<tension::Subbase> consistent;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        tension::Subbase ids;
        std::vector<tension::Formula> gamma = context;
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1) {
                ids.push_back(i);
                gamma.push_back(rules[i].material());
            }
        }
        if (tension::is_consistent(gamma)) consistent.push_back(std::move(ids));
    }

    OracleFamily family;
    if (consistent.empty()) return family;

    const tension::Subbase* best = &consistent.front();
    for (const tension::Subbase& s : consistent)
        if (tension::lex_compare(s, *best, base) == tension::LexOrder::FirstPreferred) best = &s;

    for (const tension::Subbase& s : consistent)
        if (tension::lex_compare(s, *best, base) == tension::LexOrder::Tie)
            family.subbases.push_back(s);
    std::sort(family.subbases.begin(), family.subbases.end());
    family.counts = tension::cardinality_vector(*best, base);
    return family;
}

inline bool oracle_lex_entails(const tension::StratifiedBase& base, const tension::Formula& alpha,
                               const tension::Formula& beta) {
    if (!tension::is_consistent({alpha})) return false;
    OracleFamily family = oracle_preferred(base, {alpha});
    for (const tension::Subbase& ids : family.subbases) {
        std::vector<tension::Formula> gamma{alpha};
        for (std::size_t id : ids) gamma.push_back(base.rules()[id].material());
        if (!tension::entails(gamma, beta)) return false;
    }
    return true;
}

// ── Random generators ───────────────────────────────────────────────────────

inline tension::Formula random_formula(std::mt19937& rng, const std::vector<std::string>& names,
                                       int max_time, int depth) {
    std::uniform_int_distribution<int> shape(0, depth <= 0 ? 1 : 9);
    std::uniform_int_distribution<std::size_t> name_pick(0, names.size() - 1);
    std::uniform_int_distribution<int> time_pick(0, max_time);
    switch (shape(rng)) {
        case 0:
        case 1: {
            std::uniform_int_distribution<int> leaf(0, 11);
            int kind = leaf(rng);
            if (kind == 10) return tension::Formula::top();
            if (kind == 11) return tension::Formula::bottom();
            return at(names[name_pick(rng)], time_pick(rng));
        }
        case 2:
        case 3:
            return !random_formula(rng, names, max_time, depth - 1);
        case 4:
        case 5:
            return random_formula(rng, names, max_time, depth - 1) &&
                   random_formula(rng, names, max_time, depth - 1);
        case 6:
        case 7:
            return random_formula(rng, names, max_time, depth - 1) ||
                   random_formula(rng, names, max_time, depth - 1);
        case 8:
            return tension::Formula::implication(random_formula(rng, names, max_time, depth - 1),
                                                 random_formula(rng, names, max_time, depth - 1));
        default:
            return tension::Formula::equivalence(random_formula(rng, names, max_time, depth - 1),
                                                 random_formula(rng, names, max_time, depth - 1));
    }
}

inline tension::Formula random_literal(std::mt19937& rng, const std::vector<std::string>& names,
                                       int time) {
    std::uniform_int_distribution<std::size_t> name_pick(0, names.size() - 1);
    tension::Formula a = at(names[name_pick(rng)], time);
    return rng() % 2 ? a : !a;
}

/// Random default base in the shape the domain cares about: light causal
/// rules from a small conjunction at t to a literal at t+1, plus occasional
/// persistence pairs. May be unstratifiable; callers decide what to do.
inline std::vector<tension::DefaultRule> random_base(std::mt19937& rng,
                                                     const std::vector<std::string>& names,
                                                     int horizon, std::size_t max_rules) {
    std::uniform_int_distribution<std::size_t> count_pick(1, max_rules);
    std::uniform_int_distribution<int> t_pick(0, horizon - 1);
    std::vector<tension::DefaultRule> rules;
    const std::size_t want = count_pick(rng);
    while (rules.size() < want) {
        int t = t_pick(rng);
        if (rng() % 4 == 0) {
            // persistence pair for one name
            std::uniform_int_distribution<std::size_t> name_pick(0, names.size() - 1);
            tension::Formula v = at(names[name_pick(rng)], t);
            tension::Formula same = at(v.atom_ref().name, t + 1);
            rules.push_back(tension::DefaultRule(v, same));
            if (rules.size() < want)
                rules.push_back(tension::DefaultRule(!v, !same));
            continue;
        }
        tension::Formula ante = random_literal(rng, names, t);
        if (rng() % 2) ante = ante && random_literal(rng, names, t);
        tension::Formula cons = random_literal(rng, names, rng() % 2 ? t : t + 1);
        rules.push_back(tension::DefaultRule(ante, cons));
    }
    while (rules.size() > max_rules) rules.pop_back();
    return rules;
}

/// Random small listener state: a few names, short horizon, persistence plus
/// causal rules, facts revealed about random time points. Only returns
/// states whose facts and strict rules are consistent and whose defaults
/// stratify.
inline tension::EpistemicState random_story_state(std::mt19937& rng) {
    static const std::vector<std::string> pool{"p", "q", "r", "s"};
    for (;;) {
        std::uniform_int_distribution<std::size_t> name_count(1, 4);
        std::uniform_int_distribution<int> horizon_pick(1, 3);
        std::vector<std::string> names(pool.begin(), pool.begin() + name_count(rng));
        int horizon = horizon_pick(rng);

        tension::EpistemicState state;
        state.horizon = horizon;
        std::vector<tension::DefaultRule> rules;
        for (const std::string& name : names) {
            if (rng() % 2) continue; // not every fluent persists
            for (int t = 0; t < horizon; ++t) {
                rules.push_back(tension::DefaultRule(at(name, t), at(name, t + 1)));
                rules.push_back(tension::DefaultRule(!at(name, t), !at(name, t + 1)));
            }
        }
        std::uniform_int_distribution<std::size_t> causal_count(0, 3);
        for (std::size_t i = causal_count(rng); i-- > 0;) {
            std::uniform_int_distribution<int> t_pick(0, horizon - 1);
            int t = t_pick(rng);
            tension::Formula ante = random_literal(rng, names, t);
            if (rng() % 2) ante = ante && random_literal(rng, names, t);
            rules.push_back(tension::DefaultRule(ante, random_literal(rng, names, t + 1)));
        }
        while (rules.size() > 14) rules.pop_back();
        state.defaults = std::move(rules);

        std::uniform_int_distribution<std::size_t> strict_count(0, 2);
        for (std::size_t i = strict_count(rng); i-- > 0;) {
            std::uniform_int_distribution<int> t_pick(0, horizon);
            int t = t_pick(rng);
            state.strict_rules.push_back(tension::Formula::implication(
                random_literal(rng, names, std::max(0, t - 1)), random_literal(rng, names, t)));
        }

        std::uniform_int_distribution<std::size_t> fact_count(0, 3);
        for (std::size_t i = fact_count(rng); i-- > 0;) {
            std::uniform_int_distribution<int> t_pick(0, horizon);
            state.facts.push_back(random_literal(rng, names, t_pick(rng)));
        }

        if (tension::well_formed(state)) return state;
    }
}

} // namespace testsupport

#endif
