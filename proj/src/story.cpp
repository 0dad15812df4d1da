#include "tension/story.hpp"

#include "tension/errors.hpp"
#include "tension/solver.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tension {

std::string StoryQuery::label() const {
    switch (kind) {
        case Kind::Curious: return "curious " + text;
        case Kind::Suspense: return "suspense " + text;
        case Kind::Surprise: return "surprise " + text;
    }
    return text;
}

EpistemicState StoryFile::state_at(int step) const {
    EpistemicState state;
    state.horizon = horizon;
    state.strict_rules = strict_rules;
    state.defaults = defaults;
    for (const TimedFact& f : facts)
        if (f.reveal_step <= step) state.facts.push_back(f.formula);
    return state;
}

// ── Story parsing ───────────────────────────────────────────────────────────

namespace {

std::vector<std::string> split_words(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

class StoryParser {
public:
    explicit StoryParser(std::string_view text) : text_(text) {}

    StoryFile run() {
        std::istringstream in{std::string(text_)};
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_;
            std::string line = trim(raw);
            if (auto hash = line.find('#'); hash != std::string::npos)
                line = trim(line.substr(0, hash));
            if (line.empty()) continue;
            dispatch(line);
        }
        finish();
        return std::move(story_);
    }

private:
    void dispatch(const std::string& line) {
        std::istringstream in(line);
        std::string keyword;
        in >> keyword;
        std::string rest = trim(line.substr(keyword.size()));
        if (keyword == "horizon")
            parse_horizon(rest);
        else if (keyword == "vars")
            parse_vars(rest);
        else if (keyword == "persist")
            parse_persist(rest);
        else if (keyword == "default")
            parse_default(rest);
        else if (keyword == "cwa")
            parse_cwa(rest);
        else if (keyword == "strict")
            parse_strict(rest);
        else if (keyword == "fact")
            parse_fact(rest);
        else if (keyword == "query")
            parse_query(rest);
        else if (keyword == "profile")
            parse_profile(rest);
        else
            throw StoryError("unknown keyword '" + keyword + "'", line_);
    }

    void require_header() const {
        if (!have_horizon_) throw StoryError("'horizon' must come first", line_);
        if (story_.variables.empty()) throw StoryError("'vars' must precede this entry", line_);
    }

    void parse_horizon(const std::string& rest) {
        try {
            story_.horizon = std::stoi(rest);
        } catch (const std::exception&) {
            throw StoryError("horizon expects one integer", line_);
        }
        if (story_.horizon < 0) throw StoryError("horizon must be non-negative", line_);
        have_horizon_ = true;
    }

    void parse_vars(const std::string& rest) {
        for (const std::string& name : split_words(rest)) {
            if (std::find(story_.variables.begin(), story_.variables.end(), name) !=
                story_.variables.end())
                throw StoryError("variable '" + name + "' declared twice", line_);
            story_.variables.push_back(name);
        }
        if (story_.variables.empty()) throw StoryError("vars expects at least one name", line_);
    }

    void parse_persist(const std::string& rest) {
        require_header();
        for (const std::string& name : split_words(rest)) {
            check_declared(name);
            for (int t = 0; t < story_.horizon; ++t) {
                add_default(make_rule(Formula::atom(name, t), Formula::atom(name, t + 1)));
                add_default(make_rule(!Formula::atom(name, t), !Formula::atom(name, t + 1)));
            }
        }
    }

    void parse_default(const std::string& rest) {
        require_header();
        std::size_t arrow = rest.find("~>");
        if (arrow == std::string::npos)
            throw StoryError("default expects '<antecedent> ~> <consequent>'", line_);
        std::string ante_text = trim(rest.substr(0, arrow));
        std::string tail = trim(rest.substr(arrow + 2));

        int lo = 0, hi = 0;
        bool schema = false;
        if (std::size_t f = tail.rfind(" for "); f != std::string::npos) {
            std::string clause = trim(tail.substr(f + 5));
            tail = trim(tail.substr(0, f));
            std::istringstream in(clause);
            std::string var, kw;
            in >> var >> kw;
            std::string range;
            in >> range;
            std::size_t dots = range.find("..");
            if (var != "t" || kw != "in" || dots == std::string::npos)
                throw StoryError("schema clause must read 'for t in A..B'", line_);
            try {
                lo = std::stoi(range.substr(0, dots));
                hi = std::stoi(range.substr(dots + 2));
            } catch (const std::exception&) {
                throw StoryError("schema range bounds must be integers", line_);
            }
            if (lo > hi) throw StoryError("empty schema range", line_);
            schema = true;
        }

        if (!schema) {
            add_default(make_rule(parse_here(ante_text, nullptr), parse_here(tail, nullptr)));
            return;
        }
        for (int t = lo; t <= hi; ++t) {
            std::map<std::string, int> binding{{"t", t}};
            add_default(make_rule(parse_here(ante_text, &binding), parse_here(tail, &binding)));
        }
    }

    void parse_cwa(const std::string& rest) {
        require_header();
        std::istringstream in(rest);
        std::string name;
        in >> name;
        check_declared(name);
        std::string trigger_text = trim(rest.substr(name.size()));
        if (trigger_text.empty()) throw StoryError("cwa expects a trigger formula", line_);
        for (int t = 0; t < story_.horizon; ++t) {
            std::map<std::string, int> binding{{"t", t}};
            Formula trigger = parse_here(trigger_text, &binding);
            Formula change = !Formula::atom(name, t) && Formula::atom(name, t + 1);
            story_.strict_rules.push_back(Formula::implication(change, trigger));
        }
    }

    void parse_strict(const std::string& rest) {
        require_header();
        story_.strict_rules.push_back(parse_here(rest, nullptr));
    }

    void parse_fact(const std::string& rest) {
        require_header();
        std::size_t at = rest.rfind(" at ");
        if (at == std::string::npos)
            throw StoryError("fact expects '<formula> at <step>'", line_);
        std::string formula_text = trim(rest.substr(0, at));
        int step = 0;
        try {
            step = std::stoi(trim(rest.substr(at + 4)));
        } catch (const std::exception&) {
            throw StoryError("fact reveal step must be an integer", line_);
        }
        if (step < 0 || step > story_.horizon)
            throw StoryError("fact reveal step outside [0, horizon]", line_);
        story_.facts.push_back({parse_here(formula_text, nullptr), step});
    }

    void parse_query(const std::string& rest) {
        require_header();
        std::istringstream in(rest);
        std::string kind;
        in >> kind;
        std::string body = trim(rest.substr(kind.size()));
        if (body.empty()) throw StoryError("query expects a formula", line_);
        StoryQuery q;
        q.text = body;
        if (kind == "curious" || kind == "surprise") {
            q.kind = kind == "curious" ? StoryQuery::Kind::Curious : StoryQuery::Kind::Surprise;
            q.formula = parse_here(body, nullptr);
        } else if (kind == "suspense") {
            q.kind = StoryQuery::Kind::Suspense;
            try {
                q.fluent = FluentQuery::parse_template(body);
            } catch (const ParseError& e) {
                throw StoryError(std::string("bad suspense template: ") + e.what(), line_);
            }
            check_names(*q.fluent);
        } else {
            throw StoryError("query kind must be curious, suspense, or surprise", line_);
        }
        story_.queries.push_back(std::move(q));
    }

    void parse_profile(const std::string& rest) {
        std::istringstream in(rest);
        SuspenseProfile p;
        if (!(in >> p.rise >> p.plateau >> p.descent >> p.peak))
            throw StoryError("profile expects four numbers: rise plateau descent peak", line_);
        if (!(p.rise > 0) || !(p.descent > 0) || p.plateau < 0 || p.peak < 0)
            throw StoryError("profile values out of range", line_);
        story_.profile = p;
    }

    Formula parse_here(const std::string& text, const std::map<std::string, int>* binding) {
        ParseOptions options;
        options.horizon = story_.horizon;
        options.time_bindings = binding;
        Formula f;
        try {
            f = parse(text, options);
        } catch (const ParseError& e) {
            throw StoryError(std::string("bad formula '") + text + "': " + e.what(), line_);
        }
        for (const std::string& n : f.names()) check_declared(n);
        return f;
    }

    void check_declared(const std::string& name) const {
        if (std::find(story_.variables.begin(), story_.variables.end(), name) ==
            story_.variables.end())
            throw StoryError("undeclared variable '" + name + "'", line_);
    }

    void check_names(const FluentQuery& q) const {
        for (const std::string& n : q.instantiate(0).names()) check_declared(n);
    }

    DefaultRule make_rule(Formula ante, Formula cons) {
        try {
            return DefaultRule(std::move(ante), std::move(cons));
        } catch (const Error& e) {
            throw StoryError(e.what(), line_);
        }
    }

    void add_default(DefaultRule rule) {
        if (std::find(story_.defaults.begin(), story_.defaults.end(), rule) !=
            story_.defaults.end()) {
            story_.warnings.push_back("line " + std::to_string(line_) +
                                      ": duplicate default collapsed: " + rule.str());
            return;
        }
        story_.defaults.push_back(std::move(rule));
    }

    void finish() const {
        if (!have_horizon_) throw StoryError("story declares no horizon", line_ ? line_ : 1);
        if (story_.variables.empty()) throw StoryError("story declares no variables", line_);
    }

    std::string_view text_;
    StoryFile story_;
    std::size_t line_ = 0;
    bool have_horizon_ = false;
};

} // namespace

StoryFile parse_story(std::string_view text) { return StoryParser(text).run(); }

StoryFile load_story(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open story file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_story(buffer.str());
}

// ── Replay ──────────────────────────────────────────────────────────────────

namespace {

using nlohmann::ordered_json;

struct SuspenseTrack {
    std::optional<int> onset;
    double level = 0; // curiosity intensity at onset
};

ordered_json witness_json(const SuspenseWitness& w) {
    return ordered_json{{"psi", w.psi.str()},
                        {"t_prime", w.t_prime},
                        {"polarity", w.positive ? "positive" : "negative"}};
}

ordered_json run_query(const StoryFile& story, const EpistemicState& state,
                       const StoryQuery& query, int step, const ReplayOptions& options,
                       SuspenseTrack& track) {
    ordered_json rec;
    rec["query"] = query.label();
    switch (query.kind) {
        case StoryQuery::Kind::Curious: {
            const Formula& phi = *query.formula;
            EpistemicState restricted = until(state, step);
            bool wf = true;
            StratifiedBase restricted_base;
            try {
                restricted_base = stratify(restricted.defaults);
            } catch (const InconsistentDefaultBase&) {
                wf = false;
            }
            std::vector<Formula> hard = restricted.facts;
            hard.insert(hard.end(), restricted.strict_rules.begin(),
                        restricted.strict_rules.end());
            wf = wf && is_consistent(hard);
            bool pos = false, neg = false;
            if (wf) {
                LexQuery resolved(std::move(restricted_base), std::move(hard), options.lex);
                pos = resolved.entails(phi);
                neg = resolved.entails(!phi);
            }
            bool verdict = wf && aware_of(restricted, phi) && !pos && !neg;
            rec["verdict"] = verdict;
            rec["entails_phi"] = pos;
            rec["entails_not_phi"] = neg;
            if (verdict)
                rec["intensity"] =
                    curiosity_intensity(state, phi, step, options.filter, options.lex);
            else
                rec["intensity"] = nullptr;
            break;
        }
        case StoryQuery::Kind::Surprise: {
            const Formula& phi = *query.formula;
            bool verdict = surprised(state, phi, step, options.lex);
            rec["verdict"] = verdict;
            if (verdict) {
                try {
                    rec["intensity"] = surprise_intensity(state, phi, step, options.lex);
                } catch (const NoViolatedRule& e) {
                    rec["intensity"] = nullptr;
                    rec["note"] = e.what();
                }
            } else {
                rec["intensity"] = nullptr;
            }
            break;
        }
        case StoryQuery::Kind::Suspense: {
            const FluentQuery& q = *query.fluent;
            Formula now = q.instantiate(step);
            if (!track.onset && curious(state, now, step, options.lex)) {
                track.onset = step;
                track.level = static_cast<double>(
                    curiosity_intensity(state, now, step, options.filter, options.lex));
            }
            std::optional<SuspenseWitness> witness =
                find_suspense(state, q, step, options.witness);
            rec["verdict"] = witness.has_value();
            rec["witness"] = witness ? witness_json(*witness) : ordered_json(nullptr);
            if (track.onset) {
                rec["onset"] = *track.onset;
                rec["curiosity_at_onset"] = track.level;
                rec["intensity"] =
                    suspense_intensity(story.profile, track.level, *track.onset, step);
            } else {
                rec["onset"] = nullptr;
                rec["intensity"] = nullptr;
            }
            break;
        }
    }
    return rec;
}

} // namespace

ordered_json replay(const StoryFile& story, const ReplayOptions& options) {
    ordered_json report;
    report["schema_version"] = 1;
    report["horizon"] = story.horizon;
    report["variables"] = story.variables;
    report["profile"] = ordered_json{{"rise", story.profile.rise},
                                     {"plateau", story.profile.plateau},
                                     {"descent", story.profile.descent},
                                     {"peak", story.profile.peak}};
    report["warnings"] = story.warnings;

    std::vector<SuspenseTrack> tracks(story.queries.size());
    ordered_json steps = ordered_json::array();
    for (int step = 0; step <= story.horizon; ++step) {
        EpistemicState state = story.state_at(step);
        ordered_json rec;
        rec["step"] = step;
        rec["aware"] = aware_names(state);
        ordered_json results = ordered_json::array();
        for (std::size_t qi = 0; qi < story.queries.size(); ++qi) {
            try {
                results.push_back(
                    run_query(story, state, story.queries[qi], step, options, tracks[qi]));
            } catch (const Error& e) {
                ordered_json failed;
                failed["query"] = story.queries[qi].label();
                failed["error"] = e.what();
                results.push_back(std::move(failed));
            }
        }
        rec["queries"] = std::move(results);
        steps.push_back(std::move(rec));
    }
    report["steps"] = std::move(steps);
    return report;
}

std::string replay_csv(const StoryFile& story, const ReplayOptions& options) {
    ordered_json report = replay(story, options);
    std::ostringstream out;
    out << "query,t,curiosity,suspense,surprise\n";
    for (const auto& step : report["steps"]) {
        for (const auto& rec : step["queries"]) {
            out << '"' << rec["query"].get<std::string>() << '"' << ',' << step["step"];
            std::string curiosity, suspense, surprise;
            if (rec.contains("entails_phi")) { // curiosity record
                if (rec["verdict"].get<bool>() && !rec["intensity"].is_null())
                    curiosity = rec["intensity"].dump();
            } else if (rec.contains("witness")) { // suspense record
                if (!rec["intensity"].is_null()) suspense = rec["intensity"].dump();
            } else if (rec.contains("verdict")) { // surprise record
                if (rec["verdict"].get<bool>() && !rec["intensity"].is_null())
                    surprise = rec["intensity"].dump();
            }
            out << ',' << curiosity << ',' << suspense << ',' << surprise << '\n';
        }
    }
    return out.str();
}

} // namespace tension
