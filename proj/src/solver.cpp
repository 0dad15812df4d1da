#include "tension/solver.hpp"

#include <cmath>
#include <cstdlib>

namespace tension {

// ── SatSolver ───────────────────────────────────────────────────────────────

int SatSolver::new_var() {
    ++nvars_;
    watchers_.resize(2 * static_cast<std::size_t>(nvars_));
    return nvars_;
}

void SatSolver::add_clause(std::vector<int> literals) {
    if (literals.empty()) {
        ok_ = false;
        return;
    }
    if (literals.size() == 1) {
        units_.push_back(literals[0]);
        return;
    }
    int cid = static_cast<int>(clauses_.size());
    watchers_[index(literals[0])].push_back(cid);
    watchers_[index(literals[1])].push_back(cid);
    clauses_.push_back(std::move(literals));
}

bool SatSolver::enqueue(int lit) {
    int v = std::abs(lit);
    signed char want = lit > 0 ? 1 : -1;
    if (assign_[v] != 0) return assign_[v] == want;
    assign_[v] = want;
    trail_.push_back(lit);
    return true;
}

int SatSolver::propagate() {
    while (prop_head_ < trail_.size()) {
        int lit = trail_[prop_head_++];
        int falsified = -lit;
        auto& ws = watchers_[index(falsified)];
        for (std::size_t i = 0; i < ws.size();) {
            int cid = ws[i];
            std::vector<int>& clause = clauses_[static_cast<std::size_t>(cid)];
            if (clause[0] == falsified) std::swap(clause[0], clause[1]);
            // clause[1] == falsified from here on
            auto truth = [&](int l) -> int {
                signed char a = assign_[std::abs(l)];
                if (a == 0) return 0;
                return (a == 1) == (l > 0) ? 1 : -1;
            };
            if (truth(clause[0]) == 1) {
                ++i;
                continue;
            }
            bool moved = false;
            for (std::size_t j = 2; j < clause.size(); ++j) {
                if (truth(clause[j]) != -1) {
                    std::swap(clause[1], clause[j]);
                    watchers_[index(clause[1])].push_back(cid);
                    ws[i] = ws.back();
                    ws.pop_back();
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            if (truth(clause[0]) == -1) return cid;
            enqueue(clause[0]);
            ++i;
        }
    }
    return -1;
}

void SatSolver::undo_to(std::size_t trail_size) {
    while (trail_.size() > trail_size) {
        assign_[std::abs(trail_.back())] = 0;
        trail_.pop_back();
    }
    prop_head_ = trail_size;
}

bool SatSolver::solve(const std::vector<int>& assumptions) {
    if (!ok_) return false;
    assign_.assign(static_cast<std::size_t>(nvars_) + 1, 0);
    trail_.clear();
    prop_head_ = 0;

    for (int u : units_)
        if (!enqueue(u)) return false;
    for (int a : assumptions)
        if (!enqueue(a)) return false;
    if (propagate() != -1) return false;

    struct Decision {
        int var;
        std::size_t trail_size;
        bool flipped;
    };
    std::vector<Decision> decisions;

    for (;;) {
        int branch = 0;
        for (int v = 1; v <= nvars_; ++v) {
            if (assign_[v] == 0) {
                branch = v;
                break;
            }
        }
        if (branch == 0) return true;

        decisions.push_back({branch, trail_.size(), false});
        enqueue(branch);

        while (propagate() != -1) {
            while (!decisions.empty() && decisions.back().flipped) decisions.pop_back();
            if (decisions.empty()) return false;
            Decision& d = decisions.back();
            undo_to(d.trail_size);
            d.flipped = true;
            enqueue(-d.var);
        }
    }
}

bool SatSolver::value(int var) const { return assign_[var] == 1; }

// ── CnfEncoder ──────────────────────────────────────────────────────────────

CnfEncoder::CnfEncoder(SatSolver& solver) : solver_(solver) {
    true_lit_ = solver_.new_var();
    solver_.add_clause({true_lit_});
}

int CnfEncoder::var_for(const TimedAtom& a) {
    auto it = atom_vars_.find(a);
    if (it != atom_vars_.end()) return it->second;
    int v = solver_.new_var();
    atom_vars_.emplace(a, v);
    return v;
}

int CnfEncoder::literal(const Formula& f) {
    retained_.push_back(f);
    return encode(f);
}

int CnfEncoder::encode(const Formula& f) {
    auto it = cache_.find(f.id());
    if (it != cache_.end()) return it->second;

    int lit = 0;
    switch (f.kind()) {
        case Connective::Atom:
            lit = var_for(f.atom_ref());
            break;
        case Connective::Top:
            lit = true_lit_;
            break;
        case Connective::Bottom:
            lit = -true_lit_;
            break;
        case Connective::Not:
            lit = -encode(f.left());
            break;
        case Connective::And: {
            int a = encode(f.left());
            int b = encode(f.right());
            int v = solver_.new_var();
            solver_.add_clause({-v, a});
            solver_.add_clause({-v, b});
            solver_.add_clause({v, -a, -b});
            lit = v;
            break;
        }
        case Connective::Or: {
            int a = encode(f.left());
            int b = encode(f.right());
            int v = solver_.new_var();
            solver_.add_clause({-v, a, b});
            solver_.add_clause({v, -a});
            solver_.add_clause({v, -b});
            lit = v;
            break;
        }
        case Connective::Implies: {
            int a = encode(f.left());
            int b = encode(f.right());
            int v = solver_.new_var();
            solver_.add_clause({-v, -a, b});
            solver_.add_clause({v, a});
            solver_.add_clause({v, -b});
            lit = v;
            break;
        }
        case Connective::Iff: {
            int a = encode(f.left());
            int b = encode(f.right());
            int v = solver_.new_var();
            solver_.add_clause({-v, -a, b});
            solver_.add_clause({-v, a, -b});
            solver_.add_clause({v, a, b});
            solver_.add_clause({v, -a, -b});
            lit = v;
            break;
        }
    }
    cache_.emplace(f.id(), lit);
    return lit;
}

// ── Consistency and entailment over the SAT core ────────────────────────────

bool is_consistent(const std::vector<Formula>& gamma) {
    SatSolver solver;
    CnfEncoder encoder(solver);
    for (const Formula& f : gamma) encoder.assert_formula(f);
    return solver.solve();
}

bool entails(const std::vector<Formula>& gamma, const Formula& phi) {
    SatSolver solver;
    CnfEncoder encoder(solver);
    for (const Formula& f : gamma) encoder.assert_formula(f);
    int target = encoder.literal(phi);
    return !solver.solve({-target});
}

} // namespace tension
