#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "notekg/common.hpp"
#include "notekg/kg.hpp"
#include "notekg/lexicon.hpp"
#include "notekg/wordclass.hpp"

namespace notekg {

// ---------------------------------------------------------------------------
// Literals

enum class Predicate { HasSymptom, NotHasSymptom, Severity, Duration, OnsetClass, SeverityClass };

inline std::string to_string(Predicate p) {
    switch (p) {
        case Predicate::HasSymptom: return "has_symptom";
        case Predicate::NotHasSymptom: return "not_has_symptom";
        case Predicate::Severity: return "severity";
        case Predicate::Duration: return "duration";
        case Predicate::OnsetClass: return "onset_class";
        case Predicate::SeverityClass: return "severity_class";
    }
    return "?";
}

inline std::size_t predicate_arity(Predicate p) {
    switch (p) {
        case Predicate::OnsetClass:
        case Predicate::SeverityClass: return 1;
        default: return 2;
    }
}

struct Literal {
    Predicate pred = Predicate::HasSymptom;
    std::vector<std::string> args;  // uppercase-initial arg = variable (rules only)

    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal&, const Literal&) = default;

    std::string str() const {
        std::string out = to_string(pred) + "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) out += ", ";
            bool phrase = args[i].find(' ') != std::string::npos;
            out += phrase ? "\"" + args[i] + "\"" : args[i];
        }
        return out + ")";
    }
};

inline bool is_variable(const std::string& arg) {
    return !arg.empty() && arg[0] >= 'A' && arg[0] <= 'Z';
}

// ---------------------------------------------------------------------------
// Program

struct HornRule {
    Literal head;
    std::vector<Literal> body;  // at most one distinct variable across the rule
};

/// Post-fixpoint aggregation: classify every fact of in_pred, take the
/// maximum class in the given low-to-high order, and assert out_pred(class).
/// With no classifiable input, asserts out_pred(default_class).
struct MaxClassRule {
    enum class Mode { CueMap, DurationBins };
    Mode mode = Mode::CueMap;
    Predicate in_pred = Predicate::Severity;
    Predicate out_pred = Predicate::SeverityClass;
    std::vector<std::string> classes;  // low → high, excludes default_class
    std::string default_class;
    std::map<std::string, std::string> cue_classes;  // CueMap: severity cue → class
    std::vector<long> upper_bounds;                  // DurationBins: inclusive day bounds
};

struct Constraint {
    enum class Kind { AnyOf, NoneOf };
    Kind kind = Kind::AnyOf;
    std::vector<Literal> literals;
};

struct SymbolicProgram {
    std::set<Literal> facts;
    std::vector<HornRule> rules;
    std::vector<MaxClassRule> aggregations;
    Constraint constraint;
};

struct SolveResult {
    enum class Status { Sat, Unsat };
    Status status = Status::Unsat;
    std::set<Literal> derived;
};

// ---------------------------------------------------------------------------
// Question fixtures

struct Question {
    int id = 0;
    std::string text;
    enum class Kind { YesNo, Multiclass } kind = Kind::YesNo;
    std::string target;                // concept_id (YesNo) or "severity"/"onset"
    std::vector<std::string> classes;  // Multiclass: answer domain in display order
};

inline std::vector<Question> load_questions(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed questions file: ") + e.what());
    }
    std::vector<Question> out;
    try {
        for (const auto& jq : doc) {
            Question q;
            q.id = jq.at("id").get<int>();
            q.text = jq.at("text").get<std::string>();
            std::string kind = jq.at("kind").get<std::string>();
            if (kind == "yes_no")
                q.kind = Question::Kind::YesNo;
            else if (kind == "multiclass")
                q.kind = Question::Kind::Multiclass;
            else
                throw SchemaError("unknown question kind: " + kind);
            q.target = jq.at("target").get<std::string>();
            if (jq.contains("classes"))
                for (const auto& c : jq.at("classes")) q.classes.push_back(c.get<std::string>());
            out.push_back(std::move(q));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed questions file: ") + e.what());
    }
    return out;
}

/// Severity cue → class table (data file, editable without code changes).
struct SeverityClassMap {
    std::map<std::string, std::string> cue_classes;
    std::vector<std::string> class_order;  // low → high, first entry is the default
};

inline SeverityClassMap default_severity_classes() {
    SeverityClassMap m;
    m.class_order = {"none", "mild", "moderate", "severe"};
    m.cue_classes = {{"slight", "mild"},        {"mild", "mild"},
                     {"low", "mild"},           {"moderate", "moderate"},
                     {"intermittent", "moderate"}, {"continuous", "moderate"},
                     {"persistent", "moderate"},   {"occasional", "moderate"},
                     {"high", "moderate"},      {"bad", "moderate"},
                     {"severe", "severe"}};
    return m;
}

inline SeverityClassMap load_severity_classes(const std::string& path) {
    SeverityClassMap out;
    try {
        nlohmann::json doc = nlohmann::json::parse(read_file(path));
        for (const auto& c : doc.at("class_order")) out.class_order.push_back(c.get<std::string>());
        for (const auto& [cue, cls] : doc.at("cues").items())
            out.cue_classes[cue] = cls.get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed severity class file: ") + e.what());
    }
    if (out.class_order.empty()) throw SchemaError("severity class file: empty class_order");
    for (const auto& [cue, cls] : out.cue_classes)
        if (std::find(out.class_order.begin(), out.class_order.end(), cls) ==
            out.class_order.end())
            throw SchemaError("severity class file: cue '" + cue + "' maps to unknown class");
    return out;
}

/// Day-count bins for onset classification (data file).
struct OnsetBins {
    std::vector<std::string> classes;  // parallel to upper_bounds, plus one overflow class
    std::vector<long> upper_bounds;    // inclusive day bounds, ascending
    std::string unknown_class = "unknown";
};

inline OnsetBins default_onset_bins() {
    OnsetBins b;
    b.classes = {"under_3_days", "3_to_14_days", "over_14_days"};
    b.upper_bounds = {2, 14};
    b.unknown_class = "unknown";
    return b;
}

inline OnsetBins load_onset_bins(const std::string& path) {
    OnsetBins out;
    try {
        nlohmann::json doc = nlohmann::json::parse(read_file(path));
        for (const auto& c : doc.at("classes")) out.classes.push_back(c.get<std::string>());
        for (const auto& b : doc.at("upper_bounds")) out.upper_bounds.push_back(b.get<long>());
        out.unknown_class = doc.at("unknown_class").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed onset bins file: ") + e.what());
    }
    if (out.classes.size() != out.upper_bounds.size() + 1)
        throw SchemaError("onset bins file: need exactly one more class than bound");
    if (!std::is_sorted(out.upper_bounds.begin(), out.upper_bounds.end()))
        throw SchemaError("onset bins file: bounds must be ascending");
    return out;
}

// ---------------------------------------------------------------------------
// Duration phrase → day count

/// Interprets a duration phrase as a day count: number word or digits times
/// a calendar unit ("three days" → 3, "couple weeks" → 14); sub-day units
/// count as 0; a bare unit counts once ("a week" → 7); modifiers like
/// "last"/"past" and trailing "ago" are ignored. Unparseable → nullopt.
inline std::optional<long> duration_phrase_days(const std::string& phrase) {
    static const std::map<std::string, long> point_days = {
        {"yesterday", 1}, {"today", 0}, {"tonight", 0}};
    std::optional<long> count;
    std::optional<long> unit_days;
    for (const auto& tok : split_ws(to_lower(phrase))) {
        if (tok == "ago" || words::duration_modifiers().count(tok)) continue;
        if (auto it = point_days.find(tok); it != point_days.end()) return it->second;
        if (words::is_time_unit(tok)) {
            if (unit_days) return std::nullopt;  // two units: not a simple span
            unit_days = words::time_units().at(std::string(tok));
            continue;
        }
        if (!tok.empty() && std::all_of(tok.begin(), tok.end(),
                                        [](unsigned char c) { return std::isdigit(c); })) {
            if (count) return std::nullopt;
            count = std::stol(tok);
            continue;
        }
        if (words::is_number_word(tok)) {
            if (count) return std::nullopt;
            count = words::number_words().at(std::string(tok));
            continue;
        }
        return std::nullopt;  // unrecognized token
    }
    if (!unit_days) return std::nullopt;
    return count.value_or(1) * *unit_days;
}

// ---------------------------------------------------------------------------
// Graph → facts

inline std::string concept_atom(const std::string& label) { return slug(label); }

inline std::set<Literal> kg_to_facts(const KnowledgeGraph& graph, const Lexicon&) {
    std::set<Literal> facts;
    auto label_of = [&](const std::string& id) -> std::string {
        const KGNode* n = graph.find_node(id);
        return n ? n->label : "";
    };
    for (const auto& e : graph.edges) {
        switch (e.relation.kind) {
            case RelationType::Kind::HasSymptom:
                facts.insert({Predicate::HasSymptom, {"patient", concept_atom(label_of(e.dst))}});
                break;
            case RelationType::Kind::DoesNotHaveSymptom:
                facts.insert(
                    {Predicate::NotHasSymptom, {"patient", concept_atom(label_of(e.dst))}});
                break;
            case RelationType::Kind::HasSeverity:
                facts.insert({Predicate::Severity,
                              {concept_atom(label_of(e.src)), concept_atom(label_of(e.dst))}});
                break;
            case RelationType::Kind::HasDuration:
                // Duration atoms keep the verbatim phrase text.
                facts.insert({Predicate::Duration,
                              {concept_atom(label_of(e.src)), label_of(e.dst)}});
                break;
            case RelationType::Kind::Other: break;  // not part of the QA encoding
        }
    }
    return facts;
}

// ---------------------------------------------------------------------------
// Solver

namespace detail {

inline bool literal_matches(const Literal& pattern, const Literal& fact,
                            std::optional<std::string>& binding) {
    if (pattern.pred != fact.pred || pattern.args.size() != fact.args.size()) return false;
    std::optional<std::string> local = binding;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        if (is_variable(pattern.args[i])) {
            if (local && *local != fact.args[i]) return false;
            local = fact.args[i];
        } else if (pattern.args[i] != fact.args[i]) {
            return false;
        }
    }
    binding = local;
    return true;
}

inline Literal substitute(const Literal& l, const std::optional<std::string>& binding) {
    Literal out = l;
    for (auto& a : out.args)
        if (is_variable(a) && binding) a = *binding;
    return out;
}

inline void derive_rule(const HornRule& rule, const std::set<Literal>& model,
                        std::set<Literal>& out) {
    // Breadth: collect candidate bindings from the first variable literal,
    // then verify the remainder. Bodies are tiny (≤ 3 literals).
    std::vector<std::optional<std::string>> bindings;
    bindings.emplace_back(std::nullopt);
    for (const auto& pattern : rule.body) {
        std::vector<std::optional<std::string>> next;
        for (const auto& binding : bindings) {
            for (const auto& fact : model) {
                std::optional<std::string> b = binding;
                if (literal_matches(pattern, fact, b)) next.push_back(b);
            }
        }
        // Deduplicate to keep the frontier small.
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        bindings = std::move(next);
        if (bindings.empty()) return;
    }
    for (const auto& binding : bindings) {
        Literal head = substitute(rule.head, binding);
        bool ground = std::none_of(head.args.begin(), head.args.end(),
                                   [](const std::string& a) { return is_variable(a); });
        if (ground) out.insert(head);
    }
}

inline void run_fixpoint(const std::vector<HornRule>& rules, std::set<Literal>& model) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& rule : rules) {
            std::set<Literal> derived;
            derive_rule(rule, model, derived);
            for (auto& l : derived)
                if (model.insert(l).second) changed = true;
        }
    }
}

inline std::string apply_aggregation(const MaxClassRule& agg, const std::set<Literal>& model) {
    auto rank = [&](const std::string& cls) -> long {
        auto it = std::find(agg.classes.begin(), agg.classes.end(), cls);
        return it == agg.classes.end() ? -1 : static_cast<long>(it - agg.classes.begin());
    };
    long best = -1;
    for (const auto& fact : model) {
        if (fact.pred != agg.in_pred || fact.args.size() != 2) continue;
        const std::string& value = fact.args[1];
        if (agg.mode == MaxClassRule::Mode::CueMap) {
            auto it = agg.cue_classes.find(value);
            if (it != agg.cue_classes.end()) best = std::max(best, rank(it->second));
        } else {
            auto days = duration_phrase_days(value);
            if (!days) continue;
            std::size_t bin = agg.upper_bounds.size();
            for (std::size_t i = 0; i < agg.upper_bounds.size(); ++i)
                if (*days <= agg.upper_bounds[i]) {
                    bin = i;
                    break;
                }
            if (bin < agg.classes.size()) best = std::max(best, rank(agg.classes[bin]));
        }
    }
    return best < 0 ? agg.default_class : agg.classes[static_cast<std::size_t>(best)];
}

// Predicate-level dependency reachability: can `from` feed `to`?
inline bool feeds(const SymbolicProgram& program, Predicate from, Predicate to) {
    std::set<Predicate> reached = {from};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& rule : program.rules)
            for (const auto& b : rule.body)
                if (reached.count(b.pred) && reached.insert(rule.head.pred).second) grew = true;
        for (const auto& agg : program.aggregations)
            if (reached.count(agg.in_pred) && reached.insert(agg.out_pred).second) grew = true;
    }
    return reached.count(to) > 0;
}

}  // namespace detail

inline void check_stratified(const SymbolicProgram& program) {
    // Aggregations are the non-monotone layer: their output must never
    // (transitively) feed their own input.
    for (const auto& agg : program.aggregations)
        if (detail::feeds(program, agg.out_pred, agg.in_pred))
            throw NonStratified("aggregation over " + to_string(agg.in_pred) +
                                " feeds its own input via " + to_string(agg.out_pred));
}

/// Least model by forward chaining, then aggregation layers in order, then
/// the constraint check.
inline SolveResult solve(const SymbolicProgram& program) {
    check_stratified(program);
    SolveResult result;
    result.derived = program.facts;
    detail::run_fixpoint(program.rules, result.derived);
    for (const auto& agg : program.aggregations) {
        std::string cls = detail::apply_aggregation(agg, result.derived);
        result.derived.insert({agg.out_pred, {cls}});
        detail::run_fixpoint(program.rules, result.derived);
    }
    bool any = false;
    for (const auto& lit : program.constraint.literals)
        if (result.derived.count(lit)) any = true;
    bool ok = program.constraint.kind == Constraint::Kind::AnyOf ? any : !any;
    result.status = ok ? SolveResult::Status::Sat : SolveResult::Status::Unsat;
    return result;
}

// ---------------------------------------------------------------------------
// Question encoding

namespace detail {

inline std::string yes_no_target_atom(const Question& q, const Lexicon& lexicon) {
    for (const auto& fact : lexicon.facts())
        if (fact.concept_id == q.target) return concept_atom(fact.label);
    throw UnknownConcept("question " + std::to_string(q.id) + " targets unknown concept: " +
                         q.target);
}

inline MaxClassRule severity_aggregation(const SeverityClassMap& map) {
    MaxClassRule agg;
    agg.mode = MaxClassRule::Mode::CueMap;
    agg.in_pred = Predicate::Severity;
    agg.out_pred = Predicate::SeverityClass;
    agg.default_class = map.class_order.front();
    agg.classes.assign(map.class_order.begin(), map.class_order.end());
    agg.cue_classes = map.cue_classes;
    return agg;
}

inline MaxClassRule onset_aggregation(const OnsetBins& bins) {
    MaxClassRule agg;
    agg.mode = MaxClassRule::Mode::DurationBins;
    agg.in_pred = Predicate::Duration;
    agg.out_pred = Predicate::OnsetClass;
    agg.default_class = bins.unknown_class;
    agg.classes = bins.classes;
    agg.upper_bounds = bins.upper_bounds;
    return agg;
}

}  // namespace detail

/// Builds the rules + gold-answer constraint for one question. The program
/// is Unsat exactly when the graph contradicts (or fails to support) the
/// gold answer.
inline SymbolicProgram encode_question(const Question& q, const std::string& gold,
                                       const Lexicon& lexicon, const SeverityClassMap& severity_map,
                                       const OnsetBins& onset_bins) {
    SymbolicProgram program;
    if (q.kind == Question::Kind::YesNo) {
        std::string atom = detail::yes_no_target_atom(q, lexicon);
        Literal lit{Predicate::HasSymptom, {"patient", atom}};
        program.constraint.kind =
            gold == "yes" ? Constraint::Kind::AnyOf : Constraint::Kind::NoneOf;
        program.constraint.literals = {lit};
        return program;
    }
    if (q.target == "severity") {
        program.aggregations.push_back(detail::severity_aggregation(severity_map));
        program.constraint = {Constraint::Kind::AnyOf, {{Predicate::SeverityClass, {gold}}}};
    } else if (q.target == "onset") {
        program.aggregations.push_back(detail::onset_aggregation(onset_bins));
        program.constraint = {Constraint::Kind::AnyOf, {{Predicate::OnsetClass, {gold}}}};
    } else {
        throw SchemaError("multiclass question " + std::to_string(q.id) +
                          " has unknown target: " + q.target);
    }
    return program;
}

/// Forward-mode convenience: the predicted answer is the unique gold value
/// whose encoded program is Sat.
inline std::string answer_question(const KnowledgeGraph& graph, const Question& q,
                                   const Lexicon& lexicon, const SeverityClassMap& severity_map,
                                   const OnsetBins& onset_bins) {
    std::set<Literal> facts = kg_to_facts(graph, lexicon);
    if (q.kind == Question::Kind::YesNo) {
        std::string atom = detail::yes_no_target_atom(q, lexicon);
        Literal lit{Predicate::HasSymptom, {"patient", atom}};
        return facts.count(lit) ? "yes" : "no";
    }
    MaxClassRule agg = q.target == "severity" ? detail::severity_aggregation(severity_map)
                                              : detail::onset_aggregation(onset_bins);
    if (q.target != "severity" && q.target != "onset")
        throw SchemaError("multiclass question " + std::to_string(q.id) +
                          " has unknown target: " + q.target);
    return detail::apply_aggregation(agg, facts);
}

// ---------------------------------------------------------------------------
// Metrics

struct OutcomeCounts {
    long tp = 0, tn = 0, fp = 0, fn = 0;
};

inline double accuracy(const OutcomeCounts& c) {
    long total = c.tp + c.fp + c.fn + c.tn;
    if (total == 0) throw Error("accuracy over zero outcomes");
    return static_cast<double>(c.tp + c.tn) / static_cast<double>(total);
}

/// Per-class precision averaged over classes; a class with no predictions
/// contributes 0 rather than being skipped.
inline double macro_precision(const std::vector<std::pair<long, long>>& per_class_tp_fp) {
    if (per_class_tp_fp.empty()) throw Error("macro_precision over zero classes");
    double sum = 0.0;
    for (const auto& [tp, fp] : per_class_tp_fp) {
        long predicted = tp + fp;
        sum += predicted == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(predicted);
    }
    return sum / static_cast<double>(per_class_tp_fp.size());
}

}  // namespace notekg
