#include "tension/metrics.hpp"

#include "tension/agent.hpp"
#include "tension/errors.hpp"
#include "tension/solver.hpp"

#include <algorithm>
#include <sstream>

namespace tension {

CausalGraph causal_graph(const EpistemicState& state, const EdgeFilterConfig& config) {
    CausalGraph graph;

    std::vector<Formula> hard = state.facts;
    hard.insert(hard.end(), state.strict_rules.begin(), state.strict_rules.end());

    for (const Formula& f : hard)
        for (const TimedAtom& a : f.atoms()) graph.nodes.insert(a);
    for (const DefaultRule& r : state.defaults)
        for (const TimedAtom& a : r.material().atoms()) graph.nodes.insert(a);

    // Rule edges: antecedent atoms point at consequent atoms.
    for (const DefaultRule& r : state.defaults)
        for (const TimedAtom& src : r.antecedent.atoms())
            for (const TimedAtom& dst : r.consequent.atoms())
                if (src != dst) graph.edges.emplace(src, dst);

    // Strict edges: some literal over the source, together with facts and
    // strict rules, entails some literal over the target.
    std::set<std::pair<TimedAtom, bool>> infeasible_premise;
    std::set<std::pair<TimedAtom, bool>> already_known;
    if (config.non_vacuous) {
        for (const TimedAtom& a : graph.nodes)
            for (bool neg : {false, true}) {
                Formula lit = neg ? !Formula::atom(a) : Formula::atom(a);
                std::vector<Formula> gamma = hard;
                gamma.push_back(lit);
                if (!is_consistent(gamma)) infeasible_premise.emplace(a, neg);
                if (entails(hard, lit)) already_known.emplace(a, neg);
            }
    }

    for (const TimedAtom& src : graph.nodes) {
        for (const TimedAtom& dst : graph.nodes) {
            if (src == dst) continue;
            if (config.forward_only && !(src.time < dst.time)) continue;
            if (graph.edges.contains({src, dst})) continue;

            bool found = false;
            for (bool src_neg : {false, true}) {
                Formula premise = src_neg ? !Formula::atom(src) : Formula::atom(src);
                if (config.non_vacuous && infeasible_premise.contains({src, src_neg})) continue;
                for (bool dst_neg : {false, true}) {
                    if (config.non_vacuous && already_known.contains({dst, dst_neg})) continue;
                    Formula target = dst_neg ? !Formula::atom(dst) : Formula::atom(dst);
                    std::vector<Formula> gamma = hard;
                    gamma.push_back(premise);
                    if (entails(gamma, target)) {
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) graph.edges.emplace(src, dst);
        }
    }
    return graph;
}

std::size_t degree(const CausalGraph& graph, const TimedAtom& node) {
    if (!graph.nodes.contains(node))
        throw Error("node " + node.str() + " is not in the causal graph");
    std::size_t d = 0;
    for (const auto& [src, dst] : graph.edges)
        if (src == node || dst == node) ++d;
    return d;
}

std::size_t degree_sum(const CausalGraph& graph, const Formula& phi) {
    std::size_t total = 0;
    for (const TimedAtom& a : phi.atoms())
        if (graph.nodes.contains(a)) total += degree(graph, a);
    return total;
}

std::size_t curiosity_intensity(const EpistemicState& state, const Formula& phi, int t,
                                const EdgeFilterConfig& config, const LexOptions& options) {
    if (!curious(state, phi, t, options))
        throw NotCurious("not curious about " + phi.str() + " at " + std::to_string(t));
    return degree_sum(causal_graph(state, config), phi);
}

std::string to_dot(const CausalGraph& graph) {
    auto ident = [](const TimedAtom& a) {
        return a.name + "_" + std::to_string(a.time);
    };
    std::ostringstream out;
    out << "digraph causal {\n";
    for (const TimedAtom& a : graph.nodes) out << "  \"" << ident(a) << "\";\n";
    for (const auto& [src, dst] : graph.edges)
        out << "  \"" << ident(src) << "\" -> \"" << ident(dst) << "\";\n";
    out << "}\n";
    return out.str();
}

double suspense_intensity(const SuspenseProfile& profile, double curiosity_level,
                          double onset, double t) {
    if (!(profile.rise > 0) || !(profile.descent > 0) || profile.plateau < 0 ||
        profile.peak < 0)
        throw Error("invalid suspense profile: rise and descent must be positive, "
                    "plateau and peak non-negative");
    if (curiosity_level < 0) throw Error("curiosity level must be non-negative");

    const double c = curiosity_level;
    const double rise_end = onset + profile.rise;
    const double plateau_end = rise_end + profile.plateau;
    const double zero_again = plateau_end + profile.descent;

    if (t < onset) return 0.0;
    if (t <= rise_end) return (profile.peak - c) / profile.rise * (t - onset) + c;
    if (t <= plateau_end) return profile.peak;
    if (t <= zero_again) return -profile.peak / profile.descent * (t - plateau_end) + profile.peak;
    return 0.0;
}

std::size_t surprise_intensity(const EpistemicState& state, const Formula& phi, int t,
                               const LexOptions& options) {
    if (!surprised(state, phi, t, options))
        throw NotSurprised("not surprised about " + phi.str() + " at " + std::to_string(t));

    std::vector<Formula> hard = state.facts;
    hard.insert(hard.end(), state.strict_rules.begin(), state.strict_rules.end());

    StratifiedBase base = stratify(state.defaults);
    const std::size_t n = base.stratum_count();
    for (std::size_t i = 0; i < n; ++i) {
        for (const DefaultRule& r : base.stratum(i)) {
            std::vector<Formula> gamma = hard;
            gamma.push_back(phi && r.antecedent);
            // Guard against vacuous violation through an impossible premise.
            if (!is_consistent(gamma)) continue;
            if (entails(gamma, !r.consequent)) return n - (i + 1);
        }
    }
    throw NoViolatedRule("surprise about " + phi.str() + " at " + std::to_string(t) +
                         " violates no single default rule");
}

} // namespace tension
