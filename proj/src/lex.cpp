#include "tension/lex.hpp"

#include "tension/errors.hpp"
#include "tension/solver.hpp"

#include <algorithm>
#include <map>

namespace tension {

std::vector<std::size_t> cardinality_vector(const Subbase& a, const StratifiedBase& base) {
    std::vector<std::size_t> counts(base.stratum_count(), 0);
    for (std::size_t id : a) ++counts[base.stratum_of(id)];
    return counts;
}

LexOrder lex_compare(const Subbase& a, const Subbase& b, const StratifiedBase& base) {
    std::vector<std::size_t> ca = cardinality_vector(a, base);
    std::vector<std::size_t> cb = cardinality_vector(b, base);
    for (std::size_t k = 0; k < ca.size(); ++k) {
        if (ca[k] > cb[k]) return LexOrder::FirstPreferred;
        if (ca[k] < cb[k]) return LexOrder::SecondPreferred;
    }
    return LexOrder::Tie;
}

namespace {

// One query's working state: context and rule materials encoded once, each
// candidate subbase toggled through selector assumptions. The consistency
// memo is local to the query, so concurrent queries never share state.
class LexEngine {
public:
    LexEngine(const StratifiedBase& base, const std::vector<Formula>& context)
        : base_(base), encoder_(solver_) {
        for (const Formula& f : context) encoder_.assert_formula(f);
        selectors_.reserve(base.rules().size());
        for (const DefaultRule& r : base.rules()) {
            int s = solver_.new_var();
            int m = encoder_.literal(r.material());
            solver_.add_clause({-s, m});
            selectors_.push_back(s);
        }
    }

    bool context_consistent() { return solver_.solve(); }

    bool consistent(const Subbase& ids) {
        auto it = memo_.find(ids);
        if (it != memo_.end()) return it->second;
        bool sat = solver_.solve(assumptions(ids));
        memo_.emplace(ids, sat);
        return sat;
    }

    /// str(A) + context |= phi, for a subbase already known consistent.
    bool subbase_entails(const Subbase& ids, const Formula& phi) {
        int target = encoder_.literal(phi);
        std::vector<int> assume = assumptions(ids);
        assume.push_back(-target);
        return !solver_.solve(assume);
    }

    SubbaseFamily preferred(const LexOptions& options) {
        SubbaseFamily family;
        if (!context_consistent()) return family;

        std::vector<Subbase> partials{Subbase{}};
        for (std::size_t i = 0; i < base_.stratum_count(); ++i) {
            const std::vector<std::size_t>& stratum = base_.strata()[i];
            const std::size_t m = stratum.size();
            for (std::size_t k = m + 1; k-- > 0;) {
                std::vector<Subbase> achieved;
                for (const Subbase& partial : partials) {
                    for_each_combination(stratum, k, [&](const Subbase& chosen) {
                        Subbase candidate = partial;
                        candidate.insert(candidate.end(), chosen.begin(), chosen.end());
                        if (consistent(candidate)) {
                            achieved.push_back(std::move(candidate));
                            if (achieved.size() > options.partial_cap)
                                throw ExplosionLimit(
                                    "preferred-subbase search retained more than " +
                                    std::to_string(options.partial_cap) +
                                    " partial selections");
                        }
                    });
                }
                if (!achieved.empty()) {
                    partials = std::move(achieved);
                    family.counts.push_back(k);
                    break;
                }
            }
        }
        std::sort(partials.begin(), partials.end());
        family.subbases = std::move(partials);
        return family;
    }

private:
    std::vector<int> assumptions(const Subbase& ids) const {
        std::vector<int> out;
        out.reserve(ids.size());
        for (std::size_t id : ids) out.push_back(selectors_[id]);
        return out;
    }

    template <typename Fn>
    static void for_each_combination(const std::vector<std::size_t>& pool, std::size_t k,
                                     Fn&& fn) {
        // k-combinations in lexicographic order of pool positions.
        if (k > pool.size()) return;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        for (;;) {
            Subbase chosen;
            chosen.reserve(k);
            for (std::size_t i : idx) chosen.push_back(pool[i]);
            fn(chosen);
            // advance
            std::size_t i = k;
            while (i-- > 0) {
                if (idx[i] != i + pool.size() - k) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) return;
            }
            if (k == 0) return;
        }
    }

    const StratifiedBase& base_;
    SatSolver solver_;
    CnfEncoder encoder_;
    std::vector<int> selectors_;
    std::map<Subbase, bool> memo_;
};

} // namespace

SubbaseFamily lex_preferred_subbases(const StratifiedBase& base,
                                     const std::vector<Formula>& context,
                                     const LexOptions& options) {
    LexEngine engine(base, context);
    return engine.preferred(options);
}

// ── LexQuery ────────────────────────────────────────────────────────────────

struct LexQuery::Impl {
    StratifiedBase base;
    LexEngine engine;
    SubbaseFamily family;

    Impl(StratifiedBase b, const std::vector<Formula>& context, const LexOptions& options)
        : base(std::move(b)), engine(base, context), family(engine.preferred(options)) {}
};

LexQuery::LexQuery(StratifiedBase base, std::vector<Formula> context, const LexOptions& options)
    : impl_(std::make_unique<Impl>(std::move(base), context, options)) {}

LexQuery::~LexQuery() = default;
LexQuery::LexQuery(LexQuery&&) noexcept = default;
LexQuery& LexQuery::operator=(LexQuery&&) noexcept = default;

bool LexQuery::context_consistent() const { return !impl_->family.subbases.empty(); }

const SubbaseFamily& LexQuery::family() const { return impl_->family; }

bool LexQuery::entails(const Formula& beta) {
    if (!context_consistent()) return false;
    for (const Subbase& a : impl_->family.subbases)
        if (!impl_->engine.subbase_entails(a, beta)) return false;
    return true;
}

bool lex_entails(const StratifiedBase& base, const Formula& alpha, const Formula& beta,
                 const LexOptions& options) {
    if (!is_consistent({alpha})) return false;
    LexQuery query(base, {alpha}, options);
    return query.entails(beta);
}

bool entails_b_with(const StratifiedBase& base, const EpistemicState& state,
                    const Formula& alpha, const Formula& beta, const LexOptions& options) {
    std::vector<Formula> context;
    context.reserve(state.facts.size() + state.strict_rules.size() + 1);
    context.push_back(alpha);
    context.insert(context.end(), state.facts.begin(), state.facts.end());
    context.insert(context.end(), state.strict_rules.begin(), state.strict_rules.end());
    LexQuery query(base, std::move(context), options);
    return query.entails(beta);
}

bool entails_b(const EpistemicState& state, const Formula& alpha, const Formula& beta,
               const LexOptions& options) {
    return entails_b_with(stratify(state.defaults), state, alpha, beta, options);
}

bool entails_b(const EpistemicState& state, const Formula& beta, const LexOptions& options) {
    return entails_b(state, Formula::top(), beta, options);
}

// ── EpistemicState well-formedness ──────────────────────────────────────────

std::optional<std::string> diagnose(const EpistemicState& state) {
    std::vector<Formula> hard = state.facts;
    hard.insert(hard.end(), state.strict_rules.begin(), state.strict_rules.end());
    if (!is_consistent(hard)) return "facts and strict rules are inconsistent";
    try {
        stratify(state.defaults);
    } catch (const InconsistentDefaultBase& e) {
        return std::string("default base cannot be stratified: ") + e.what();
    }
    return std::nullopt;
}

bool well_formed(const EpistemicState& state) { return !diagnose(state).has_value(); }

} // namespace tension
