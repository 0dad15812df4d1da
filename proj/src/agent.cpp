#include "tension/agent.hpp"

#include "tension/errors.hpp"
#include "tension/solver.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace tension {

// ── until ───────────────────────────────────────────────────────────────────

EpistemicState until(const EpistemicState& state, int t) {
    if (t < -1 || t > state.horizon)
        throw Error("until(" + std::to_string(t) + ") outside [-1, " +
                    std::to_string(state.horizon) + "]");
    EpistemicState out;
    out.horizon = state.horizon;
    if (t >= 0) {
        for (const Formula& f : state.facts)
            if (f.max_time() <= t) out.facts.push_back(f);
    }
    // t = -1 keeps no facts by convention, but atom-free rules survive.
    for (const Formula& f : state.strict_rules)
        if (f.max_time() <= t) out.strict_rules.push_back(f);
    for (const DefaultRule& r : state.defaults)
        if (std::max(r.antecedent.max_time(), r.consequent.max_time()) <= t)
            out.defaults.push_back(r);
    return out;
}

// ── awareness ───────────────────────────────────────────────────────────────

std::set<std::string> aware_names(const EpistemicState& state) {
    std::set<std::string> aware;
    for (const Formula& f : state.facts)
        for (const std::string& n : f.names()) aware.insert(n);
    if (aware.empty()) return aware;

    std::vector<std::set<std::string>> rule_names;
    for (const Formula& f : state.strict_rules) rule_names.push_back(f.names());
    for (const DefaultRule& r : state.defaults) rule_names.push_back(r.material().names());

    bool grew = true;
    while (grew) {
        grew = false;
        for (const std::set<std::string>& names : rule_names) {
            bool touches = std::any_of(names.begin(), names.end(),
                                       [&](const std::string& n) { return aware.contains(n); });
            if (!touches) continue;
            for (const std::string& n : names)
                if (aware.insert(n).second) grew = true;
        }
    }
    return aware;
}

bool aware_of(const EpistemicState& state, const Formula& phi) {
    std::set<std::string> aware = aware_names(state);
    for (const std::string& n : phi.names())
        if (!aware.contains(n)) return false;
    return true;
}

// ── curiosity ───────────────────────────────────────────────────────────────

bool curious(const EpistemicState& state, const Formula& phi, int t, const LexOptions& options) {
    EpistemicState restricted = until(state, t);

    std::vector<Formula> hard = restricted.facts;
    hard.insert(hard.end(), restricted.strict_rules.begin(), restricted.strict_rules.end());
    if (!is_consistent(hard)) return false;
    StratifiedBase base;
    try {
        base = stratify(restricted.defaults);
    } catch (const InconsistentDefaultBase&) {
        return false;
    }

    if (!aware_of(restricted, phi)) return false;
    LexQuery query(std::move(base), std::move(hard), options);
    return !query.entails(phi) && !query.entails(!phi);
}

// ── FluentQuery ─────────────────────────────────────────────────────────────

FluentQuery::FluentQuery(Formula zero_indexed) : slot_(std::move(zero_indexed)) {
    for (const TimedAtom& a : slot_.atoms())
        if (a.time != 0)
            throw Error("fluent template must have every atom at slot index 0, got " + a.str());
}

FluentQuery FluentQuery::parse_template(std::string_view text) {
    ParseOptions options;
    options.template_mode = true;
    return FluentQuery(parse(text, options));
}

namespace {

Formula retime(const Formula& f, int t) {
    switch (f.kind()) {
        case Connective::Atom:
            return Formula::atom(f.atom_ref().name, t);
        case Connective::Top:
        case Connective::Bottom:
            return f;
        case Connective::Not:
            return !retime(f.left(), t);
        case Connective::And:
            return retime(f.left(), t) && retime(f.right(), t);
        case Connective::Or:
            return retime(f.left(), t) || retime(f.right(), t);
        case Connective::Implies:
            return Formula::implication(retime(f.left(), t), retime(f.right(), t));
        case Connective::Iff:
            return Formula::equivalence(retime(f.left(), t), retime(f.right(), t));
    }
    throw Error("corrupt formula node");
}

std::string strip_times(const Formula& f) {
    std::string out = f.str();
    std::string cleaned;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] == '@') {
            while (i + 1 < out.size() && std::isdigit(static_cast<unsigned char>(out[i + 1])))
                ++i;
            continue;
        }
        cleaned += out[i];
    }
    return cleaned;
}

} // namespace

Formula FluentQuery::instantiate(int t) const {
    if (t < 0) throw Error("cannot instantiate a fluent template at time " + std::to_string(t));
    return retime(slot_, t);
}

std::string FluentQuery::str() const { return strip_times(slot_); }

// ── suspense ────────────────────────────────────────────────────────────────

namespace {

struct LiteralChoice {
    TimedAtom atom;
    bool negated;

    Formula formula() const {
        Formula a = Formula::atom(atom);
        return negated ? !a : a;
    }

    // positive polarity before negative, atoms by (name, time)
    auto key() const { return std::tuple(atom.name, atom.time, negated); }
};

// Candidate disclosures in deterministic order: by max time index, then
// conjunction size, then lexicographic on the literal keys.
std::vector<std::vector<LiteralChoice>> witness_candidates(const std::set<std::string>& aware,
                                                           int t, int horizon,
                                                           std::size_t max_conjuncts) {
    std::vector<LiteralChoice> literals;
    for (const std::string& name : aware)
        for (int tt = t + 1; tt <= horizon; ++tt)
            for (bool neg : {false, true}) literals.push_back({TimedAtom{name, tt}, neg});
    std::sort(literals.begin(), literals.end(),
              [](const LiteralChoice& a, const LiteralChoice& b) { return a.key() < b.key(); });

    std::vector<std::vector<LiteralChoice>> out;
    std::vector<std::size_t> idx;
    auto grow = [&](auto&& self, std::size_t start, std::size_t size) -> void {
        if (idx.size() == size) {
            // skip combinations that pair both polarities of one atom
            std::set<TimedAtom> seen;
            std::vector<LiteralChoice> combo;
            for (std::size_t i : idx) {
                if (!seen.insert(literals[i].atom).second) return;
                combo.push_back(literals[i]);
            }
            out.push_back(std::move(combo));
            return;
        }
        for (std::size_t i = start; i < literals.size(); ++i) {
            idx.push_back(i);
            self(self, i + 1, size);
            idx.pop_back();
        }
    };
    for (std::size_t size = 1; size <= max_conjuncts; ++size) grow(grow, 0, size);

    auto max_time = [](const std::vector<LiteralChoice>& combo) {
        int m = -1;
        for (const LiteralChoice& l : combo) m = std::max(m, l.atom.time);
        return m;
    };
    std::stable_sort(out.begin(), out.end(),
                     [&](const std::vector<LiteralChoice>& a,
                         const std::vector<LiteralChoice>& b) {
                         int ma = max_time(a), mb = max_time(b);
                         if (ma != mb) return ma < mb;
                         if (a.size() != b.size()) return a.size() < b.size();
                         std::vector<std::tuple<std::string, int, bool>> ka, kb;
                         for (const LiteralChoice& l : a) ka.push_back(l.key());
                         for (const LiteralChoice& l : b) kb.push_back(l.key());
                         return ka < kb;
                     });
    return out;
}

Formula conjunction_of(const std::vector<LiteralChoice>& combo) {
    Formula acc = combo.front().formula();
    for (std::size_t i = 1; i < combo.size(); ++i)
        acc = acc && combo[i].formula();
    return acc;
}

template <typename OnWitness>
void scan_witnesses(const EpistemicState& state, const FluentQuery& query, int t,
                    const WitnessSearchConfig& config, OnWitness&& on_witness) {
    if (!curious(state, query.instantiate(t), t, config.lex)) return;
    if (t >= state.horizon) return; // no later time point can settle anything

    EpistemicState restricted = until(state, t);
    std::set<std::string> aware = aware_names(restricted);
    StratifiedBase base = stratify(state.defaults);

    for (const std::vector<LiteralChoice>& combo :
         witness_candidates(aware, t, state.horizon, config.max_conjuncts)) {
        Formula psi = conjunction_of(combo);

        std::vector<Formula> known = restricted.facts;
        known.insert(known.end(), state.strict_rules.begin(), state.strict_rules.end());
        known.push_back(psi);
        if (!is_consistent(known)) continue;

        // one resolved context per disclosure answers every (t', polarity)
        // question below
        std::vector<Formula> context = state.facts;
        context.push_back(psi);
        context.insert(context.end(), state.strict_rules.begin(), state.strict_rules.end());
        LexQuery disclosed(base, std::move(context), config.lex);
        if (!disclosed.context_consistent()) continue;

        bool stop = false;
        for (int tp = t + 1; tp <= state.horizon && !stop; ++tp) {
            Formula at_tp = query.instantiate(tp);
            if (disclosed.entails(at_tp)) {
                if (on_witness(SuspenseWitness{psi, tp, true})) stop = true;
            } else if (disclosed.entails(!at_tp)) {
                if (on_witness(SuspenseWitness{psi, tp, false})) stop = true;
            }
        }
        if (stop) return;
    }
}

} // namespace

std::optional<SuspenseWitness> find_suspense(const EpistemicState& state,
                                             const FluentQuery& query, int t,
                                             const WitnessSearchConfig& config) {
    std::optional<SuspenseWitness> found;
    scan_witnesses(state, query, t, config, [&](SuspenseWitness w) {
        found = std::move(w);
        return true; // stop at the first witness
    });
    return found;
}

std::vector<SuspenseWitness> suspense_witnesses(const EpistemicState& state,
                                                const FluentQuery& query, int t,
                                                const WitnessSearchConfig& config) {
    std::vector<SuspenseWitness> all;
    scan_witnesses(state, query, t, config, [&](SuspenseWitness w) {
        all.push_back(std::move(w));
        return false; // keep scanning
    });
    return all;
}

// ── surprise ────────────────────────────────────────────────────────────────

bool surprised(const EpistemicState& state, const Formula& phi, int t,
               const LexOptions& options) {
    if (t < 0) throw Error("surprise is only defined for t >= 0");

    bool member = false;
    for (const Formula& f : state.facts) {
        if (f.max_time() <= t && f == phi) {
            member = true;
            break;
        }
    }
    if (!member) return false;

    EpistemicState at_t = until(state, t);
    if (!well_formed(at_t)) return false;

    EpistemicState before;
    before.horizon = state.horizon;
    before.facts = until(state, t - 1).facts;
    before.strict_rules = at_t.strict_rules;
    before.defaults = at_t.defaults;
    return entails_b(before, !phi, options);
}

} // namespace tension
