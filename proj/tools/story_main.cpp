// story — command-line front end: load a story file, replay it over time,
// run the emotion detectors and metrics, and emit machine-readable reports.

#include "tension/agent.hpp"
#include "tension/lex.hpp"
#include "tension/metrics.hpp"
#include "tension/solver.hpp"
#include "tension/story.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>

namespace {

using nlohmann::ordered_json;

int cmd_stratify(const std::string& path) {
    tension::StoryFile story = tension::load_story(path);
    tension::StratifiedBase base = tension::stratify(story.defaults);
    std::cout << "n = " << base.stratum_count() << "\n";
    for (std::size_t i = 0; i < base.stratum_count(); ++i) {
        std::cout << "stratum " << (i + 1) << (i == 0 ? " (most specific)" : "") << ":\n";
        for (const tension::DefaultRule& r : base.stratum(i))
            std::cout << "  " << r.str() << "\n";
    }
    return 0;
}

int cmd_infer(const std::string& path, const std::string& premise_text,
              const std::string& conclusion_text, int until_t) {
    tension::StoryFile story = tension::load_story(path);
    tension::EpistemicState state = story.full_state();
    if (until_t >= 0) state = tension::until(state, until_t);

    tension::Formula premise = tension::parse(premise_text, story.horizon);
    tension::Formula conclusion = tension::parse(conclusion_text, story.horizon);

    ordered_json out;
    out["premise"] = premise.str();
    out["conclusion"] = conclusion.str();
    if (auto trouble = tension::diagnose(state)) {
        out["verdict"] = false;
        out["diagnostic"] = *trouble;
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    std::vector<tension::Formula> context;
    context.push_back(premise);
    context.insert(context.end(), state.facts.begin(), state.facts.end());
    context.insert(context.end(), state.strict_rules.begin(), state.strict_rules.end());
    tension::LexQuery query(tension::stratify(state.defaults), std::move(context));

    out["verdict"] = query.entails(conclusion);
    out["cardinality_vector"] = query.family().counts;
    out["preferred_subbases"] = query.family().subbases.size();
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_emotions(const std::string& path) {
    tension::StoryFile story = tension::load_story(path);
    std::cout << tension::replay(story).dump(2) << "\n";
    return 0;
}

int cmd_graph(const std::string& path, int until_t, bool raw_edges) {
    tension::StoryFile story = tension::load_story(path);
    tension::EpistemicState state = story.full_state();
    if (until_t >= 0) state = tension::until(state, until_t);
    tension::EdgeFilterConfig config;
    if (raw_edges) {
        config.non_vacuous = false;
        config.forward_only = false;
    }
    std::cout << tension::to_dot(tension::causal_graph(state, config));
    return 0;
}

int cmd_tension(const std::string& path) {
    tension::StoryFile story = tension::load_story(path);
    std::cout << tension::replay_csv(story);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonmonotonic story engine: stratification, lexicographic "
                 "inference, and narrative-tension emotions"};
    app.require_subcommand(1);

    std::string file;
    std::string premise = "true";
    std::string conclusion;
    int until_t = -1;
    bool raw_edges = false;

    CLI::App* stratify = app.add_subcommand("stratify", "print the System Z strata");
    stratify->add_option("file", file)->required();

    CLI::App* infer = app.add_subcommand("infer", "nonmonotonic inference over the story state");
    infer->add_option("file", file)->required();
    infer->add_option("--premise", premise, "premise formula (default: true)");
    infer->add_option("--conclusion", conclusion, "conclusion formula")->required();
    infer->add_option("--until", until_t, "restrict the state to time points <= t");

    CLI::App* emotions = app.add_subcommand("emotions", "full replay report as JSON");
    emotions->add_option("file", file)->required();

    CLI::App* graph = app.add_subcommand("graph", "causal graph as DOT");
    graph->add_option("file", file)->required();
    graph->add_option("--until", until_t, "restrict the state to time points <= t");
    graph->add_flag("--raw-edges", raw_edges, "disable the vacuity and forward filters");

    CLI::App* tension_cmd = app.add_subcommand("tension", "intensity time series as CSV");
    tension_cmd->add_option("file", file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (stratify->parsed()) return cmd_stratify(file);
        if (infer->parsed()) return cmd_infer(file, premise, conclusion, until_t);
        if (emotions->parsed()) return cmd_emotions(file);
        if (graph->parsed()) return cmd_graph(file, until_t, raw_edges);
        if (tension_cmd->parsed()) return cmd_tension(file);
    } catch (const tension::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
