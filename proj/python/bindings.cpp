// Python bindings for the main engine operations. Formulas cross the
// boundary as objects with the canonical text form; reports cross as JSON
// strings.

#include "tension/agent.hpp"
#include "tension/defaults.hpp"
#include "tension/errors.hpp"
#include "tension/formula.hpp"
#include "tension/lex.hpp"
#include "tension/metrics.hpp"
#include "tension/solver.hpp"
#include "tension/story.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace tension;

namespace {

Formula parse_py(const std::string& text, std::optional<int> horizon) {
    ParseOptions options;
    options.horizon = horizon;
    return parse(text, options);
}

EdgeFilterConfig filter_config(bool raw) {
    EdgeFilterConfig config;
    if (raw) {
        config.non_vacuous = false;
        config.forward_only = false;
    }
    return config;
}

} // namespace

PYBIND11_MODULE(_tension, m) {
    m.doc() = "nonmonotonic story engine: stratification, lexicographic "
              "inference, and narrative-tension emotions";

    py::register_exception<Error>(m, "EngineError");

    py::class_<Formula>(m, "Formula")
        .def("__str__", &Formula::str)
        .def("__repr__", [](const Formula& f) { return "Formula('" + f.str() + "')"; })
        .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
        .def("__invert__", [](const Formula& f) { return !f; })
        .def("__and__", [](const Formula& a, const Formula& b) { return a && b; })
        .def("__or__", [](const Formula& a, const Formula& b) { return a || b; })
        .def_property_readonly("names", &Formula::names)
        .def_property_readonly("max_time", &Formula::max_time);

    m.def("parse", &parse_py, py::arg("text"), py::arg("horizon") = std::nullopt,
          "Parse a formula such as '(A@0 | E@0) & !box@1'.");
    m.def("top", &Formula::top);
    m.def("implication", &Formula::implication);

    py::class_<DefaultRule>(m, "DefaultRule")
        .def(py::init<Formula, Formula>(), py::arg("antecedent"), py::arg("consequent"))
        .def_readonly("antecedent", &DefaultRule::antecedent)
        .def_readonly("consequent", &DefaultRule::consequent)
        .def("material", &DefaultRule::material)
        .def("__str__", &DefaultRule::str)
        .def("__repr__", [](const DefaultRule& r) { return "DefaultRule('" + r.str() + "')"; })
        .def("__eq__", [](const DefaultRule& a, const DefaultRule& b) { return a == b; });

    m.def("is_consistent", &is_consistent, py::arg("formulas"));
    m.def("entails", &entails, py::arg("formulas"), py::arg("conclusion"));
    m.def("strict", &strict, py::arg("rules"), "Material counterparts of a rule set.");
    m.def("tolerated", &tolerated, py::arg("rule"), py::arg("rules"));

    py::class_<StratifiedBase>(m, "StratifiedBase")
        .def_property_readonly("stratum_count", &StratifiedBase::stratum_count)
        .def_property_readonly("rules", &StratifiedBase::rules)
        .def("stratum", &StratifiedBase::stratum, py::arg("index"),
             "Rules of one stratum; index 0 is the most specific.");
    m.def("stratify", &stratify, py::arg("rules"));

    m.def(
        "lex_entails",
        [](const StratifiedBase& base, const Formula& alpha, const Formula& beta) {
            return lex_entails(base, alpha, beta);
        },
        py::arg("base"), py::arg("alpha"), py::arg("beta"));
    m.def(
        "lex_preferred_subbases",
        [](const StratifiedBase& base, const std::vector<Formula>& context) {
            SubbaseFamily family = lex_preferred_subbases(base, context);
            return py::make_tuple(family.subbases, family.counts);
        },
        py::arg("base"), py::arg("context"),
        "Returns (subbases, cardinality_vector); subbases are rule-id lists.");

    py::class_<EpistemicState>(m, "EpistemicState")
        .def(py::init([](std::vector<Formula> facts, std::vector<Formula> strict_rules,
                         std::vector<DefaultRule> defaults, int horizon) {
                 EpistemicState s;
                 s.facts = std::move(facts);
                 s.strict_rules = std::move(strict_rules);
                 s.defaults = std::move(defaults);
                 s.horizon = horizon;
                 return s;
             }),
             py::arg("facts"), py::arg("strict_rules"), py::arg("defaults"), py::arg("horizon"))
        .def_readonly("facts", &EpistemicState::facts)
        .def_readonly("strict_rules", &EpistemicState::strict_rules)
        .def_readonly("defaults", &EpistemicState::defaults)
        .def_readonly("horizon", &EpistemicState::horizon);

    m.def("well_formed", &well_formed);
    m.def("diagnose", &diagnose);
    m.def(
        "entails_b",
        [](const EpistemicState& state, const Formula& alpha, const Formula& beta) {
            return entails_b(state, alpha, beta);
        },
        py::arg("state"), py::arg("alpha"), py::arg("beta"));
    m.def(
        "believes",
        [](const EpistemicState& state, const Formula& beta) { return entails_b(state, beta); },
        py::arg("state"), py::arg("beta"), "The premise-free shortcut of entails_b.");

    m.def("until", &until, py::arg("state"), py::arg("t"));
    m.def("aware_names", &aware_names, py::arg("state"));
    m.def("aware_of", &aware_of, py::arg("state"), py::arg("formula"));
    m.def(
        "curious",
        [](const EpistemicState& state, const Formula& phi, int t) {
            return curious(state, phi, t);
        },
        py::arg("state"), py::arg("formula"), py::arg("t"));

    py::class_<FluentQuery>(m, "FluentQuery")
        .def(py::init(&FluentQuery::parse_template), py::arg("template_text"))
        .def("instantiate", &FluentQuery::instantiate, py::arg("t"))
        .def("__str__", &FluentQuery::str);

    py::class_<SuspenseWitness>(m, "SuspenseWitness")
        .def_readonly("psi", &SuspenseWitness::psi)
        .def_readonly("t_prime", &SuspenseWitness::t_prime)
        .def_readonly("positive", &SuspenseWitness::positive)
        .def("__repr__", [](const SuspenseWitness& w) {
            return "SuspenseWitness(psi='" + w.psi.str() +
                   "', t_prime=" + std::to_string(w.t_prime) +
                   ", positive=" + (w.positive ? "True" : "False") + ")";
        });

    m.def(
        "find_suspense",
        [](const EpistemicState& state, const FluentQuery& query, int t,
           std::size_t max_conjuncts) {
            WitnessSearchConfig config;
            config.max_conjuncts = max_conjuncts;
            return find_suspense(state, query, t, config);
        },
        py::arg("state"), py::arg("query"), py::arg("t"), py::arg("max_conjuncts") = 2);
    m.def(
        "suspense_witnesses",
        [](const EpistemicState& state, const FluentQuery& query, int t,
           std::size_t max_conjuncts) {
            WitnessSearchConfig config;
            config.max_conjuncts = max_conjuncts;
            return suspense_witnesses(state, query, t, config);
        },
        py::arg("state"), py::arg("query"), py::arg("t"), py::arg("max_conjuncts") = 2);
    m.def(
        "surprised",
        [](const EpistemicState& state, const Formula& phi, int t) {
            return surprised(state, phi, t);
        },
        py::arg("state"), py::arg("formula"), py::arg("t"));

    m.def(
        "causal_graph_dot",
        [](const EpistemicState& state, bool raw) {
            return to_dot(causal_graph(state, filter_config(raw)));
        },
        py::arg("state"), py::arg("raw") = false);
    m.def(
        "curiosity_intensity",
        [](const EpistemicState& state, const Formula& phi, int t) {
            return curiosity_intensity(state, phi, t);
        },
        py::arg("state"), py::arg("formula"), py::arg("t"));
    m.def(
        "suspense_intensity",
        [](double rise, double plateau, double descent, double peak, double curiosity_level,
           double onset, double t) {
            return suspense_intensity({rise, plateau, descent, peak}, curiosity_level, onset, t);
        },
        py::arg("rise"), py::arg("plateau"), py::arg("descent"), py::arg("peak"),
        py::arg("curiosity_level"), py::arg("onset"), py::arg("t"));
    m.def(
        "surprise_intensity",
        [](const EpistemicState& state, const Formula& phi, int t) {
            return surprise_intensity(state, phi, t);
        },
        py::arg("state"), py::arg("formula"), py::arg("t"));

    py::class_<StoryFile>(m, "StoryFile")
        .def_readonly("horizon", &StoryFile::horizon)
        .def_readonly("variables", &StoryFile::variables)
        .def_readonly("defaults", &StoryFile::defaults)
        .def_readonly("strict_rules", &StoryFile::strict_rules)
        .def_readonly("warnings", &StoryFile::warnings)
        .def("state_at", &StoryFile::state_at, py::arg("step"))
        .def("full_state", &StoryFile::full_state);

    m.def("load_story", &load_story, py::arg("path"));
    m.def("parse_story", [](const std::string& text) { return parse_story(text); },
          py::arg("text"));
    m.def(
        "replay_json",
        [](const StoryFile& story) { return replay(story).dump(2); },
        py::arg("story"), "Replay report as a JSON string.");
    m.def(
        "replay_csv", [](const StoryFile& story) { return replay_csv(story); },
        py::arg("story"));
}
