// ============================================================================
// tension/formula.hpp — time-indexed propositional language
// ============================================================================
//
// The language is built from atoms `name@t` where `name` is a variable symbol
// and `t` a time point in [0, N]. Connectives: ! & | -> <-> plus the
// constants true/false. The printer emits a fully parenthesized canonical
// form and parse(print(f)) is structurally equal to f.
//
// All values are immutable after construction and safe to share across
// threads.
// ============================================================================

#ifndef TENSION_FORMULA_HPP
#define TENSION_FORMULA_HPP

#include "tension/errors.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tension {

// ── TimedAtom ───────────────────────────────────────────────────────────────

/// A variable symbol indexed by a time point, e.g. box@1.
struct TimedAtom {
    std::string name;
    int time = 0;

    auto operator<=>(const TimedAtom&) const = default;

    std::string str() const { return name + "@" + std::to_string(time); }
};

// ── Formula ─────────────────────────────────────────────────────────────────

enum class Connective : std::uint8_t {
    Atom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Top,
    Bottom
};

/// Immutable formula AST with value semantics. Copies share nodes.
class Formula {
public:
    /// Default-constructs the constant `true`.
    Formula();

    static Formula atom(TimedAtom a);
    static Formula atom(std::string name, int time);
    static Formula top();
    static Formula bottom();
    static Formula negation(Formula f);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula implication(Formula lhs, Formula rhs);
    static Formula equivalence(Formula lhs, Formula rhs);

    Connective kind() const;

    /// Atom payload; only valid when kind() == Connective::Atom.
    const TimedAtom& atom_ref() const;

    /// Child accessors. left() is the only child of a negation.
    const Formula& left() const;
    const Formula& right() const;

    /// Canonical fully parenthesized rendering.
    std::string str() const;

    /// Set of timed atoms occurring in the formula (the vars accessor).
    std::set<TimedAtom> atoms() const;

    /// Set of variable symbols occurring in the formula, time stripped.
    std::set<std::string> names() const;

    /// Largest time index occurring in the formula; -1 when atom-free.
    int max_time() const;

    /// Structural equality (no commutativity or associativity normalization).
    bool operator==(const Formula& other) const;

    /// Stable node identity; equal ids imply structural equality. Used as a
    /// cache key by the CNF encoder.
    const void* id() const { return node_.get(); }

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

// Connective sugar used heavily by tests and fixtures.
inline Formula operator!(Formula f) { return Formula::negation(std::move(f)); }
inline Formula operator&&(Formula a, Formula b) {
    return Formula::conjunction(std::move(a), std::move(b));
}
inline Formula operator||(Formula a, Formula b) {
    return Formula::disjunction(std::move(a), std::move(b));
}

/// Left fold of a set of formulas into one conjunction; empty set yields true.
Formula conjoin(const std::vector<Formula>& formulas);

// ── Parsing ─────────────────────────────────────────────────────────────────

struct ParseOptions {
    /// When set, every time index must lie in [0, horizon].
    std::optional<int> horizon;

    /// Template mode: atoms are bare identifiers, e.g. `empty`, and all get
    /// time index 0. Used by fluent queries that are re-indexed later.
    bool template_mode = false;

    /// Bindings for symbolic time expressions like `@t` or `@t+1` in story
    /// rule schemas. Unbound symbols are a parse error.
    const std::map<std::string, int>* time_bindings = nullptr;
};

/// Parses the concrete syntax. Grammar, tightest first:
///   atom `name@t`, constants `true` / `false`, `!`, `&`, `|`,
///   `->` (right-associative), `<->` (left-associative); parentheses allowed.
Formula parse(std::string_view text, const ParseOptions& options = {});
Formula parse(std::string_view text, int horizon);

// ── Interpretations and classical semantics ─────────────────────────────────

/// Total truth assignment over a declared finite vocabulary.
class Interpretation {
public:
    explicit Interpretation(std::map<TimedAtom, bool> assignment)
        : assignment_(std::move(assignment)) {}

    /// Truth value of an atom; the atom must belong to the vocabulary.
    bool value(const TimedAtom& a) const;

    /// Evaluates a formula whose atoms all belong to the vocabulary.
    bool satisfies(const Formula& f) const;

    const std::map<TimedAtom, bool>& assignment() const { return assignment_; }

    auto operator<=>(const Interpretation&) const = default;

private:
    std::map<TimedAtom, bool> assignment_;
};

struct ModelsOptions {
    /// Enumeration refuses vocabularies larger than this.
    std::size_t max_vocab = 24;
};

/// All interpretations over `vocab` satisfying `f`, by brute-force
/// enumeration. Desk-scale only; the SAT route below is the real decision
/// procedure and this enumerator doubles as its test oracle.
std::vector<Interpretation> models(const Formula& f,
                                   const std::set<TimedAtom>& vocab,
                                   const ModelsOptions& options = {});

/// Satisfiability of the conjunction of `gamma`, decided by Tseitin CNF
/// encoding plus a complete DPLL search. The empty set is consistent.
bool is_consistent(const std::vector<Formula>& gamma);

/// Classical entailment: gamma ∪ {¬phi} unsatisfiable.
bool entails(const std::vector<Formula>& gamma, const Formula& phi);

} // namespace tension

#endif
