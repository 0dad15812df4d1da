#include "tension/solver.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace tension;
using testsupport::at;

TEST_CASE("is_consistent basics") {
    CHECK_FALSE(is_consistent({at("a", 0), !at("a", 0)}));
    CHECK(is_consistent({}));
    std::vector<Formula> story = testsupport::box_cwa();
    story.push_back(!at("box", 0));
    story.push_back(at("box", 1));
    CHECK(is_consistent(story));
}

TEST_CASE("entails basics") {
    CHECK(entails({at("a", 0)}, at("a", 0) || at("b", 0)));
    CHECK_FALSE(entails({}, at("a", 0)));

    // a closed-world axiom firing: no visibility change without the opener
    Formula axiom = Formula::implication(!at("visible", 0) && at("visible", 1), at("C", 0));
    std::vector<Formula> gamma{axiom, !at("visible", 0), at("visible", 1)};
    CHECK(entails(gamma, at("C", 0)));
    // the truth-table oracle agrees
    std::set<TimedAtom> vocab{{"visible", 0}, {"visible", 1}, {"C", 0}};
    CHECK(models(conjoin(gamma) && !at("C", 0), vocab).empty());
}

TEST_CASE("SAT agrees with brute-force enumeration on random formulas") {
    std::mt19937 rng(11);
    const std::vector<std::string> names{"a", "b", "c"};
    for (int i = 0; i < 400; ++i) {
        Formula f = testsupport::random_formula(rng, names, 3, 6);
        std::set<TimedAtom> vocab = f.atoms();
        if (vocab.size() > 12) continue;
        bool by_sat = is_consistent({f});
        bool by_enum = !models(f, vocab).empty();
        CAPTURE(f.str());
        CHECK(by_sat == by_enum);
        // entails(∅, f) iff ¬f has no models
        CHECK(entails({}, f) == models(!f, vocab).empty());
    }
}

TEST_CASE("adding formulas can only shrink consistency") {
    std::mt19937 rng(13);
    const std::vector<std::string> names{"a", "b"};
    for (int i = 0; i < 200; ++i) {
        Formula f = testsupport::random_formula(rng, names, 2, 5);
        Formula g = testsupport::random_formula(rng, names, 2, 5);
        if (is_consistent({f, g})) CHECK(is_consistent({f}));
    }
}

TEST_CASE("solver handles assumptions and repeated solves") {
    SatSolver solver;
    CnfEncoder enc(solver);
    int a = enc.literal(at("a", 0));
    int b = enc.literal(at("b", 0));
    solver.add_clause({-a, b}); // a -> b
    CHECK(solver.solve());
    CHECK(solver.solve({a}));
    CHECK(solver.solve({a, b}));
    CHECK_FALSE(solver.solve({a, -b}));
    CHECK(solver.solve({-a, -b}));
    CHECK(solver.solve({a})); // solvable again after UNSAT under assumptions
}
