// ============================================================================
// tension/solver.hpp — CNF encoding and a complete DPLL search
// ============================================================================
//
// Small, dependency-free SAT core used by every decision procedure in the
// engine. Instances here are tiny (dozens of variables), so the solver does
// two-watched-literal unit propagation with chronological backtracking and
// no clause learning. Solving is repeatable under assumptions, which is what
// the preferred-subbase search needs: encode rule materials once, toggle
// them per candidate subbase.
// ============================================================================

#ifndef TENSION_SOLVER_HPP
#define TENSION_SOLVER_HPP

#include "tension/formula.hpp"

#include <map>
#include <memory>
#include <vector>

namespace tension {

/// Literals are signed variable indices: +v asserts v, -v asserts ¬v, v ≥ 1.
class SatSolver {
public:
    int new_var();
    int var_count() const { return nvars_; }

    /// Adds a clause; the empty clause makes the instance trivially UNSAT.
    void add_clause(std::vector<int> literals);

    bool solve() { return solve({}); }
    bool solve(const std::vector<int>& assumptions);

    /// Model access after a satisfiable solve().
    bool value(int var) const;

private:
    static std::size_t index(int lit) {
        return 2 * static_cast<std::size_t>(std::abs(lit) - 1) + (lit < 0 ? 1 : 0);
    }

    bool enqueue(int lit);
    int propagate(); // returns a conflicting clause id or -1
    void undo_to(std::size_t trail_size);

    int nvars_ = 0;
    bool ok_ = true;
    std::vector<std::vector<int>> clauses_;
    std::vector<int> units_;
    std::vector<std::vector<int>> watchers_; // literal index -> clause ids
    std::vector<signed char> assign_;        // 1-based; 0 free, +1 true, -1 false
    std::vector<int> trail_;
    std::size_t prop_head_ = 0;
};

/// Tseitin encoder over formulas. Every distinct subformula gets a defining
/// literal l with l <-> subformula enforced, so both polarities of the
/// definition may be assumed.
class CnfEncoder {
public:
    explicit CnfEncoder(SatSolver& solver);

    /// Returns the defining literal of f, encoding it on first sight. The
    /// encoder keeps f alive so cached node identities stay valid.
    int literal(const Formula& f);

    /// Asserts f as a unit clause on its defining literal.
    void assert_formula(const Formula& f) { solver_.add_clause({literal(f)}); }

    int var_for(const TimedAtom& a);
    const std::map<TimedAtom, int>& atom_vars() const { return atom_vars_; }

private:
    int encode(const Formula& f);

    SatSolver& solver_;
    int true_lit_ = 0;
    std::map<TimedAtom, int> atom_vars_;
    std::map<const void*, int> cache_;
    std::vector<Formula> retained_;
};

} // namespace tension

#endif
