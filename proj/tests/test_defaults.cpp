#include "tension/defaults.hpp"

#include "support.hpp"
#include "tension/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace tension;
using testsupport::at;

namespace {

std::set<std::string> rule_strings(const std::vector<DefaultRule>& rules) {
    std::set<std::string> out;
    for (const DefaultRule& r : rules) out.insert(r.str());
    return out;
}

} // namespace

TEST_CASE("strict translates rules to materials") {
    DefaultRule persistence(!at("box", 0), !at("box", 1));
    auto materials = strict({persistence});
    REQUIRE(materials.size() == 1);
    CHECK(materials[0] == (!!at("box", 0) || !at("box", 1)));

    CHECK(strict({}).empty());

    auto two = strict({DefaultRule(at("a", 0), at("b", 0)), DefaultRule(at("b", 0), at("c", 0))});
    CHECK(two[0] == (!at("a", 0) || at("b", 0)));
    CHECK(two[1] == (!at("b", 0) || at("c", 0)));
}

TEST_CASE("a rule with antecedent false is rejected") {
    CHECK_THROWS_AS(DefaultRule(Formula::bottom(), at("a", 0)), Error);
}

TEST_CASE("tolerance") {
    auto box = testsupport::box_defaults();
    DefaultRule persistence(at("box", 0), at("box", 1));
    CHECK(tolerated(persistence, box)); // persistence survives the whole base

    CHECK(tolerated(DefaultRule(at("a", 0), at("b", 0)), {})); // just a&b satisfiable

    DefaultRule opener(at("C", 0) && !at("visible", 0), at("visible", 1));
    DefaultRule empty_case(at("C", 0) && !at("visible", 0) && at("empty", 0), !at("visible", 1));
    CHECK(tolerated(opener, {empty_case}));       // witness with empty@0 false
    CHECK_FALSE(tolerated(empty_case, {opener})); // firing both is contradictory
}

TEST_CASE("stratify recovers the three box strata") {
    StratifiedBase base = stratify(testsupport::box_defaults());
    REQUIRE(base.stratum_count() == 3);

    std::set<std::string> expected_top, expected_mid, expected_low;
    for (int t = 0; t < 3; ++t) {
        expected_top.insert(DefaultRule(at("C", t) && !at("visible", t) && at("empty", t),
                                        !at("visible", t + 1))
                                .str());
        expected_mid.insert(
            DefaultRule(at("C", t) && !at("visible", t), at("visible", t + 1)).str());
        expected_mid.insert(
            DefaultRule((at("A", t) || at("E", t)) && !at("box", t), at("box", t + 1)).str());
        for (const char* v : {"box", "empty", "visible"}) {
            expected_low.insert(DefaultRule(at(v, t), at(v, t + 1)).str());
            expected_low.insert(DefaultRule(!at(v, t), !at(v, t + 1)).str());
        }
    }
    CHECK(rule_strings(base.stratum(0)) == expected_top);
    CHECK(rule_strings(base.stratum(1)) == expected_mid);
    CHECK(rule_strings(base.stratum(2)) == expected_low);
}

TEST_CASE("stratify corner cases") {
    CHECK(stratify({}).stratum_count() == 0);
    CHECK_THROWS_AS(stratify({DefaultRule(at("a", 0), at("b", 0)),
                              DefaultRule(at("a", 0), !at("b", 0))}),
                    InconsistentDefaultBase);
}

TEST_CASE("stratification is insensitive to input order and re-checkable") {
    std::mt19937 rng(5);
    auto rules = testsupport::box_defaults();
    StratifiedBase reference = stratify(rules);

    for (int round = 0; round < 3; ++round) {
        std::shuffle(rules.begin(), rules.end(), rng);
        StratifiedBase shuffled = stratify(rules);
        REQUIRE(shuffled.stratum_count() == reference.stratum_count());
        for (std::size_t i = 0; i < reference.stratum_count(); ++i)
            CHECK(rule_strings(shuffled.stratum(i)) == rule_strings(reference.stratum(i)));
    }

    // every rule is tolerated by what remained when its layer was peeled:
    // its own stratum plus every more specific one, minus itself
    for (std::size_t i = 0; i < reference.stratum_count(); ++i) {
        for (const DefaultRule& r : reference.stratum(i)) {
            std::vector<DefaultRule> rest;
            for (std::size_t j = 0; j <= i; ++j)
                for (const DefaultRule& other : reference.stratum(j))
                    if (!(other == r)) rest.push_back(other);
            CHECK(tolerated(r, rest));
        }
    }
}

TEST_CASE("an already-entailed rule adds at most one stratum") {
    std::vector<DefaultRule> base{DefaultRule(at("a", 0), at("b", 0))};
    std::size_t before = stratify(base).stratum_count();
    base.push_back(DefaultRule(at("a", 0) && at("c", 0), at("b", 0)));
    std::size_t after = stratify(base).stratum_count();
    CHECK(after <= before + 1);

    auto box = testsupport::box_defaults();
    std::size_t box_before = stratify(box).stratum_count();
    box.push_back(DefaultRule(at("box", 0) && at("C", 0), at("box", 1)));
    CHECK(stratify(box).stratum_count() <= box_before + 1);
}

TEST_CASE("duplicate rules collapse to one") {
    std::vector<DefaultRule> twice{DefaultRule(at("a", 0), at("b", 0)),
                                   DefaultRule(at("a", 0), at("b", 0))};
    CHECK(stratify(twice).rules().size() == 1);
}
