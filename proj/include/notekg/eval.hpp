#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "notekg/common.hpp"
#include "notekg/kg.hpp"
#include "notekg/preprocess.hpp"
#include "notekg/qa.hpp"

namespace notekg {

// ---------------------------------------------------------------------------
// Corpus files

struct NotesLoadResult {
    std::vector<RawNote> notes;
    std::vector<std::string> errors;  // one entry per malformed line
};

/// Reads a JSON-Lines notes file; malformed lines are reported, not fatal.
inline NotesLoadResult load_notes_lenient(const std::string& path) {
    NotesLoadResult out;
    std::string content = read_file(path);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        std::size_t nl = content.find('\n', pos);
        std::string line = content.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? content.size() + 1 : nl + 1;
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            nlohmann::json doc = nlohmann::json::parse(line);
            RawNote note;
            note.note_id = doc.at("note_id").get<std::string>();
            note.text = doc.at("text").get<std::string>();
            out.notes.push_back(std::move(note));
        } catch (const nlohmann::json::exception& e) {
            out.errors.push_back("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

inline std::vector<RawNote> load_notes(const std::string& path) {
    NotesLoadResult r = load_notes_lenient(path);
    if (!r.errors.empty()) throw SchemaError("notes file " + path + ": " + r.errors.front());
    return r.notes;
}

inline std::map<std::string, KnowledgeGraph> load_graphs(const std::string& path) {
    std::map<std::string, KnowledgeGraph> out;
    std::string content = read_file(path);
    std::size_t pos = 0, line_no = 0;
    while (pos <= content.size()) {
        std::size_t nl = content.find('\n', pos);
        std::string line = content.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? content.size() + 1 : nl + 1;
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            KnowledgeGraph g = graph_from_json(nlohmann::json::parse(line));
            std::string id = g.note_id;
            if (!out.emplace(id, std::move(g)).second)
                throw SchemaError("duplicate note_id: " + id);
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError("graphs file " + path + " line " + std::to_string(line_no) + ": " +
                              e.what());
        }
    }
    return out;
}

/// Gold answers: JSONL {"note_id", "answers": {"<question id>": "<answer>"}}.
inline std::map<std::string, std::map<int, std::string>> load_gold_answers(
    const std::string& path) {
    std::map<std::string, std::map<int, std::string>> out;
    std::string content = read_file(path);
    std::size_t pos = 0, line_no = 0;
    while (pos <= content.size()) {
        std::size_t nl = content.find('\n', pos);
        std::string line = content.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? content.size() + 1 : nl + 1;
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            nlohmann::json doc = nlohmann::json::parse(line);
            std::string id = doc.at("note_id").get<std::string>();
            for (const auto& [qid, ans] : doc.at("answers").items())
                out[id][std::stoi(qid)] = ans.get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError("gold answers file " + path + " line " + std::to_string(line_no) +
                              ": " + e.what());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graph diff

struct GraphDiff {
    std::vector<std::string> missing_nodes;  // in gold, not predicted (by id)
    std::vector<std::string> extra_nodes;    // in predicted, not gold
    std::vector<std::string> missing_edges;
    std::vector<std::string> extra_edges;
    double edge_precision = 0.0;
    double edge_recall = 0.0;
    double edge_f1 = 0.0;

    bool identical() const {
        return missing_nodes.empty() && extra_nodes.empty() && missing_edges.empty() &&
               extra_edges.empty();
    }
};

inline std::string edge_key(const KGEdge& e) {
    return e.src + " -[" + e.relation.serialized() + "]-> " + e.dst;
}

inline std::string node_key(const KGNode& n) {
    std::string key = to_string(n.kind) + "|" + n.label;
    if (!n.concept_id.empty()) key += "|" + n.concept_id;
    return key;
}

/// Identity diff over (kind, label, concept_id) node keys and edge triples,
/// with F1 over edges.
inline GraphDiff compare_graphs(const KnowledgeGraph& predicted, const KnowledgeGraph& gold) {
    GraphDiff diff;
    std::set<std::string> pred_nodes, gold_nodes;
    for (const auto& n : predicted.nodes) pred_nodes.insert(node_key(n));
    for (const auto& n : gold.nodes) gold_nodes.insert(node_key(n));
    for (const auto& id : gold_nodes)
        if (!pred_nodes.count(id)) diff.missing_nodes.push_back(id);
    for (const auto& id : pred_nodes)
        if (!gold_nodes.count(id)) diff.extra_nodes.push_back(id);

    std::set<std::string> pred_edges, gold_edges;
    for (const auto& e : predicted.edges) pred_edges.insert(edge_key(e));
    for (const auto& e : gold.edges) gold_edges.insert(edge_key(e));
    std::size_t hit = 0;
    for (const auto& k : gold_edges) {
        if (pred_edges.count(k))
            ++hit;
        else
            diff.missing_edges.push_back(k);
    }
    for (const auto& k : pred_edges)
        if (!gold_edges.count(k)) diff.extra_edges.push_back(k);

    if (pred_edges.empty() && gold_edges.empty()) {
        diff.edge_precision = diff.edge_recall = diff.edge_f1 = 1.0;
    } else {
        diff.edge_precision =
            pred_edges.empty() ? 0.0 : static_cast<double>(hit) / pred_edges.size();
        diff.edge_recall = gold_edges.empty() ? 0.0 : static_cast<double>(hit) / gold_edges.size();
        double pr = diff.edge_precision + diff.edge_recall;
        diff.edge_f1 = pr == 0.0 ? 0.0 : 2.0 * diff.edge_precision * diff.edge_recall / pr;
    }
    return diff;
}

// ---------------------------------------------------------------------------
// Noise injection

struct NoiseSpec {
    double typo_rate = 0.0;
    double abbreviation_rate = 0.0;
    bool subject_drop = false;
    unsigned seed = 0;
};

namespace detail {

inline bool alpha_word(const std::string& w) {
    return !w.empty() && std::all_of(w.begin(), w.end(), [](unsigned char c) {
               return std::isalpha(c) != 0;
           });
}

inline std::string mutate_token(const std::string& tok, std::mt19937& rng) {
    std::string out = tok;
    std::uniform_int_distribution<int> coin(0, 1);
    if (coin(rng) == 0 && out.size() >= 2) {
        std::uniform_int_distribution<std::size_t> at(0, out.size() - 2);
        std::size_t i = at(rng);
        std::swap(out[i], out[i + 1]);
    } else {
        std::uniform_int_distribution<std::size_t> at(0, out.size() - 1);
        std::uniform_int_distribution<int> letter(0, 25);
        out[at(rng)] = static_cast<char>('a' + letter(rng));
    }
    return out;
}

}  // namespace detail

/// Seed-deterministic corruption: single-character typos, re-abbreviation
/// of phrases the lexicon can expand, and dropped sentence subjects.
inline RawNote inject_noise(const RawNote& clean, const NoiseSpec& spec, const Lexicon& lexicon) {
    std::mt19937 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::string text = clean.text;

    if (spec.subject_drop) {
        std::string lowered = to_lower(text);
        if (lowered.rfind("the patient ", 0) == 0)
            text = text.substr(12);
        else if (lowered.rfind("patient ", 0) == 0)
            text = text.substr(8);
    }

    if (spec.abbreviation_rate > 0.0) {
        // Longest expansions first so overlapping phrases abbreviate stably.
        std::vector<std::pair<std::string, std::string>> reverse;  // expansion -> key
        for (const auto& [key, expansion] : lexicon.abbreviations())
            reverse.emplace_back(expansion, key);
        std::sort(reverse.begin(), reverse.end(), [](const auto& a, const auto& b) {
            return a.first.size() != b.first.size() ? a.first.size() > b.first.size()
                                                    : a.first < b.first;
        });
        std::string lowered = to_lower(text);
        for (const auto& [phrase, key] : reverse) {
            std::size_t at = 0;
            while ((at = lowered.find(phrase, at)) != std::string::npos) {
                bool left_ok = at == 0 || !std::isalnum(static_cast<unsigned char>(lowered[at - 1]));
                std::size_t end = at + phrase.size();
                bool right_ok =
                    end >= lowered.size() ||
                    !std::isalnum(static_cast<unsigned char>(lowered[end]));
                if (left_ok && right_ok && unit(rng) < spec.abbreviation_rate) {
                    text = text.substr(0, at) + key + text.substr(end);
                    lowered = to_lower(text);
                    at += key.size();
                } else {
                    at = end;
                }
            }
        }
    }

    if (spec.typo_rate > 0.0) {
        Tokens words = split_ws(text);
        for (auto& w : words) {
            if (w.size() < 4 || !detail::alpha_word(w)) continue;
            if (unit(rng) < spec.typo_rate) w = detail::mutate_token(w, rng);
        }
        text = join(words);
    }

    RawNote noisy;
    noisy.note_id = clean.note_id;
    noisy.text = text;
    return noisy;
}

// ---------------------------------------------------------------------------
// QA scoring

struct QaReport {
    struct PerQuestion {
        std::string text;
        std::string kind;  // "yes_no" | "multiclass"
        long correct = 0;
        long total = 0;
        double question_accuracy = 0.0;
        double question_macro_precision = 0.0;  // multiclass only
    };
    std::map<int, PerQuestion> per_question;
    double yes_no_accuracy = 0.0;
    double multiclass_macro_precision = 0.0;
    long yes_no_pairs = 0;
    long multiclass_pairs = 0;
    std::vector<std::string> warnings;
};

/// Scores predicted answers against gold: pooled accuracy over all yes/no
/// pairs, and the mean of the per-question macro precisions over the
/// multiclass questions.
inline QaReport score_qa(const std::map<std::string, std::map<int, std::string>>& predictions,
                         const std::vector<Question>& questions,
                         const std::map<std::string, std::map<int, std::string>>& gold) {
    QaReport report;
    OutcomeCounts pooled;
    std::vector<double> macro_scores;
    for (const auto& q : questions) {
        QaReport::PerQuestion pq;
        pq.text = q.text;
        pq.kind = q.kind == Question::Kind::YesNo ? "yes_no" : "multiclass";
        std::map<std::string, std::pair<long, long>> class_tp_fp;
        if (q.kind == Question::Kind::Multiclass)
            for (const auto& c : q.classes) class_tp_fp[c] = {0, 0};
        for (const auto& [note_id, gold_answers] : gold) {
            auto ga = gold_answers.find(q.id);
            if (ga == gold_answers.end()) {
                report.warnings.push_back("no gold answer for note " + note_id + " question " +
                                          std::to_string(q.id));
                continue;
            }
            auto pn = predictions.find(note_id);
            if (pn == predictions.end() || !pn->second.count(q.id)) {
                report.warnings.push_back("no prediction for note " + note_id + " question " +
                                          std::to_string(q.id));
                continue;
            }
            const std::string& predicted = pn->second.at(q.id);
            const std::string& expected = ga->second;
            ++pq.total;
            if (predicted == expected) ++pq.correct;
            if (q.kind == Question::Kind::YesNo) {
                ++report.yes_no_pairs;
                if (expected == "yes")
                    predicted == "yes" ? ++pooled.tp : ++pooled.fn;
                else
                    predicted == "no" ? ++pooled.tn : ++pooled.fp;
            } else {
                ++report.multiclass_pairs;
                if (!class_tp_fp.count(predicted)) class_tp_fp[predicted] = {0, 0};
                if (predicted == expected)
                    ++class_tp_fp[predicted].first;
                else
                    ++class_tp_fp[predicted].second;
            }
        }
        pq.question_accuracy =
            pq.total == 0 ? 0.0 : static_cast<double>(pq.correct) / static_cast<double>(pq.total);
        if (q.kind == Question::Kind::Multiclass && pq.total > 0) {
            std::vector<std::pair<long, long>> counts;
            for (const auto& [cls, tp_fp] : class_tp_fp) counts.push_back(tp_fp);
            pq.question_macro_precision = macro_precision(counts);
            macro_scores.push_back(pq.question_macro_precision);
        }
        report.per_question[q.id] = std::move(pq);
    }
    report.yes_no_accuracy = report.yes_no_pairs == 0 ? 0.0 : accuracy(pooled);
    report.multiclass_macro_precision =
        macro_scores.empty()
            ? 0.0
            : std::accumulate(macro_scores.begin(), macro_scores.end(), 0.0) /
                  static_cast<double>(macro_scores.size());
    return report;
}

inline nlohmann::ordered_json qa_report_to_json(const QaReport& report) {
    nlohmann::ordered_json doc;
    doc["per_question"] = nlohmann::ordered_json::object();
    for (const auto& [qid, pq] : report.per_question) {
        nlohmann::ordered_json jq;
        jq["text"] = pq.text;
        jq["kind"] = pq.kind;
        jq["correct"] = pq.correct;
        jq["total"] = pq.total;
        jq["accuracy"] = pq.question_accuracy;
        if (pq.kind == "multiclass") jq["macro_precision"] = pq.question_macro_precision;
        doc["per_question"][std::to_string(qid)] = std::move(jq);
    }
    doc["yes_no_accuracy"] = report.yes_no_accuracy;
    doc["multiclass_macro_precision"] = report.multiclass_macro_precision;
    if (!report.warnings.empty()) doc["warnings"] = report.warnings;
    return doc;
}

}  // namespace notekg
