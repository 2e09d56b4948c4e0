#pragma once

#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "notekg/common.hpp"
#include "notekg/kg.hpp"

namespace notekg {

struct Reconstruction {
    std::string note_id;
    std::string text;
    double sts = 0.0;
};

using Stopwords = std::unordered_set<std::string>;

/// Scaffolding words excluded from similarity scoring: determiners, copula
/// and auxiliary verbs, subject tokens, and bare connectives. Negators and
/// the duration cue "for" stay contentful on purpose.
inline const Stopwords& default_stopwords() {
    static const Stopwords t = {
        "the", "a",    "an",   "this",  "that",  "is",   "was",    "are",  "am",
        "be",  "been", "were", "has",   "have",  "had",  "do",     "does", "did",
        "can", "will", "would", "could", "may",  "might", "must",  "shall", "should",
        "patient", "pt", "she", "he",   "they",  "and",  "or"};
    return t;
}

inline Stopwords load_stopwords(const std::string& path) {
    Stopwords out;
    for (const auto& line : split_ws(read_file(path))) out.insert(to_lower(line));
    return out;
}

/// Decodes a graph into one sentence per symptom, joined with "and":
/// "the patient has <severity>* <label> [for <duration>]" for affirmed
/// symptoms, "the patient does not have <label>" for negated ones.
inline std::string graph_to_text(const KnowledgeGraph& graph) {
    std::vector<const KGNode*> symptoms;
    for (const auto& n : graph.nodes)
        if (n.kind == NodeKind::Symptom) symptoms.push_back(&n);
    std::sort(symptoms.begin(), symptoms.end(),
              [](const KGNode* a, const KGNode* b) { return a->id < b->id; });

    std::vector<std::string> clauses;
    for (const KGNode* sym : symptoms) {
        bool negated = false, has_polarity = false;
        for (const auto& e : graph.edges) {
            if (e.dst != sym->id) continue;
            if (e.relation.kind == RelationType::Kind::HasSymptom) has_polarity = true;
            if (e.relation.kind == RelationType::Kind::DoesNotHaveSymptom) {
                has_polarity = true;
                negated = true;
            }
        }
        if (!has_polarity) continue;
        if (negated) {
            clauses.push_back("the patient does not have " + sym->label);
            continue;
        }
        std::vector<const KGNode*> severities, durations;
        for (const auto& e : graph.edges) {
            if (e.src != sym->id) continue;
            if (e.relation.kind == RelationType::Kind::HasSeverity) {
                if (const KGNode* n = graph.find_node(e.dst)) severities.push_back(n);
            } else if (e.relation.kind == RelationType::Kind::HasDuration) {
                if (const KGNode* n = graph.find_node(e.dst)) durations.push_back(n);
            }
        }
        auto by_id = [](const KGNode* a, const KGNode* b) { return a->id < b->id; };
        std::sort(severities.begin(), severities.end(), by_id);
        std::sort(durations.begin(), durations.end(), by_id);
        std::string clause = "the patient has";
        for (const KGNode* s : severities) clause += " " + s->label;
        clause += " " + sym->label;
        for (const KGNode* d : durations) {
            if (d->label.size() >= 3 && d->label.ends_with("ago"))
                clause += " " + d->label;
            else
                clause += " for " + d->label;
        }
        clauses.push_back(std::move(clause));
    }
    std::string out;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        if (i) out += " and ";
        out += clauses[i];
    }
    return out;
}

namespace detail {

inline std::unordered_map<std::string, double> term_frequencies(const std::string& text,
                                                                const Stopwords& stopwords) {
    std::unordered_map<std::string, double> tf;
    for (auto& raw : split_ws(to_lower(text))) {
        std::string tok = strip_edge_punct(raw);
        if (tok.empty() || stopwords.count(tok)) continue;
        tf[tok] += 1.0;
    }
    return tf;
}

}  // namespace detail

/// Cosine similarity of term-frequency vectors over content tokens.
/// Both sides empty after stopword removal → 1.0; exactly one empty → 0.0.
inline double sts(const std::string& a, const std::string& b,
                  const Stopwords& stopwords = default_stopwords()) {
    auto ta = detail::term_frequencies(a, stopwords);
    auto tb = detail::term_frequencies(b, stopwords);
    if (ta.empty() && tb.empty()) return 1.0;
    if (ta.empty() || tb.empty()) return 0.0;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [tok, f] : ta) {
        na += f * f;
        auto it = tb.find(tok);
        if (it != tb.end()) dot += f * it->second;
    }
    for (const auto& [tok, f] : tb) nb += f * f;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

inline double mean_sts(const std::vector<std::pair<std::string, std::string>>& pairs,
                       const Stopwords& stopwords = default_stopwords()) {
    if (pairs.empty()) throw EmptyCorpus("mean_sts over zero pairs");
    double sum = 0.0;
    for (const auto& [a, b] : pairs) sum += sts(a, b, stopwords);
    return sum / static_cast<double>(pairs.size());
}

/// Extracts the note's graph, decodes it, and scores the decoding against
/// the pre-processed source text.
inline Reconstruction reconstruct_note(const RawNote& note, const Lexicon& lexicon,
                                       const Stopwords& stopwords = default_stopwords(),
                                       const std::set<std::string>* vocabulary = nullptr) {
    KnowledgeGraph graph = extract_note_graph(note, lexicon, vocabulary);
    Reconstruction rec;
    rec.note_id = note.note_id;
    rec.text = graph_to_text(graph);
    rec.sts = sts(preprocessed_text(preprocess_note(note, lexicon, vocabulary)), rec.text,
                  stopwords);
    return rec;
}

}  // namespace notekg
