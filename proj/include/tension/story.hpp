// ============================================================================
// tension/story.hpp — story files, replay, and machine-readable reports
// ============================================================================
//
// A story file is a line-oriented document:
//
//   horizon 3
//   vars box A E C empty visible
//   persist box empty visible
//   default (A@t | E@t) & !box@t ~> box@t+1   for t in 0..2
//   cwa box A@t | E@t
//   strict <formula>
//   fact !box@0 at 1
//   query curious A@0
//   query suspense empty
//   query surprise box@1
//   profile 6 6 3 10
//
// `persist v` expands to the frame defaults v@t ~> v@t+1 and !v@t ~> !v@t+1
// for every t below the horizon. `cwa v <trigger>` expands to the axioms
// (!v@t & v@t+1) -> trigger[t] forbidding a change of v without its trigger.
// Every fact carries the replay step at which the listener learns it.
// ============================================================================

#ifndef TENSION_STORY_HPP
#define TENSION_STORY_HPP

#include "tension/agent.hpp"
#include "tension/metrics.hpp"
#include "tension/state.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tension {

struct StoryQuery {
    enum class Kind { Curious, Suspense, Surprise };

    Kind kind;
    std::optional<Formula> formula;    // curious / surprise
    std::optional<FluentQuery> fluent; // suspense
    std::string text;                  // as written in the file

    std::string label() const;
};

struct TimedFact {
    Formula formula;
    int reveal_step = 0;
};

struct StoryFile {
    int horizon = 0;
    std::vector<std::string> variables;
    std::vector<DefaultRule> defaults;
    std::vector<Formula> strict_rules;
    std::vector<TimedFact> facts;
    std::vector<StoryQuery> queries;
    SuspenseProfile profile{1, 0, 1, 0};
    std::vector<std::string> warnings;

    /// Listener state once every fact revealed at steps <= step is known.
    EpistemicState state_at(int step) const;
    EpistemicState full_state() const { return state_at(horizon); }
};

StoryFile parse_story(std::string_view text);
StoryFile load_story(const std::string& path);

// ── Replay ──────────────────────────────────────────────────────────────────

struct ReplayOptions {
    WitnessSearchConfig witness;
    LexOptions lex;
    EdgeFilterConfig filter;
};

/// Drives every query through steps 0..N: at step s the state holds the
/// facts revealed no later than s and each detector runs at time s.
/// Per-query engine errors are reported in-band so one pathological query
/// cannot hide the rest. Output is deterministic: identical input bytes
/// produce identical report bytes.
nlohmann::ordered_json replay(const StoryFile& story, const ReplayOptions& options = {});

/// CSV time series `query,t,curiosity,suspense,surprise`; cells are empty
/// when the emotion is not felt at that step.
std::string replay_csv(const StoryFile& story, const ReplayOptions& options = {});

} // namespace tension

#endif
