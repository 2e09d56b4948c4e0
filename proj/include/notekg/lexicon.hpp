#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "notekg/common.hpp"

namespace notekg {

enum class FactCategory { SignSymptom, PreexistingCondition };

inline std::string to_string(FactCategory c) {
    return c == FactCategory::SignSymptom ? "sign_symptom" : "preexisting_condition";
}

inline FactCategory fact_category_from_string(std::string_view s) {
    if (s == "sign_symptom") return FactCategory::SignSymptom;
    if (s == "preexisting_condition") return FactCategory::PreexistingCondition;
    throw MalformedLexicon(0, "unknown category '" + std::string(s) + "'");
}

/// One clinically relevant concept: a canonical label plus the noun and
/// adjective phrases that are synonymous with it.
struct SupportedFact {
    std::string concept_id;
    std::string label;
    std::set<std::string> noun_supports;
    std::set<std::string> adjective_supports;
    FactCategory category = FactCategory::SignSymptom;
};

enum class MatchVia { Noun, Adjective };

/// A support-phrase hit over a token sequence; token_span is half-open.
struct FactMatch {
    std::size_t fact_index = 0;
    std::size_t begin = 0;
    std::size_t end = 0;
    MatchVia via = MatchVia::Noun;

    std::size_t length() const { return end - begin; }
};

/// The supported-facts dictionary plus the auxiliary cue tables
/// (abbreviations, severity cues, duration cue heads).
///
/// Immutable after load; all queries are pure reads, so one instance can be
/// shared across any number of worker threads.
class Lexicon {
public:
    Lexicon() = default;

    static Lexicon load(const std::filesystem::path& path) {
        return load_merged({path});
    }

    /// Loads and merges several lexicon files. Facts with the same
    /// concept_id are unioned; a support phrase mapping to two distinct
    /// concepts is rejected.
    static Lexicon load_merged(const std::vector<std::filesystem::path>& paths);

    /// Canonical JSON form: sorted keys, sorted arrays, 2-space indent.
    /// Loading the dump yields an identical lexicon and an identical dump.
    std::string dump() const;

    const std::vector<SupportedFact>& facts() const { return facts_; }
    const std::map<std::string, std::string>& abbreviations() const { return abbreviations_; }
    const std::set<std::string>& severity_cues() const { return severity_cues_; }
    const std::set<std::string>& duration_cue_heads() const { return duration_cue_heads_; }

    bool is_severity_cue(std::string_view tok) const {
        return severity_cues_.count(std::string(tok)) > 0;
    }
    bool is_duration_cue_head(std::string_view tok) const {
        return duration_cue_heads_.count(std::string(tok)) > 0;
    }

    /// True if `tok` appears as a token of any noun support phrase.
    bool is_noun_support_token(std::string_view tok) const {
        return noun_tokens_.count(std::string(tok)) > 0;
    }

    /// True if `tok` is a single-word adjective support of some fact.
    bool is_adjective_support_word(std::string_view tok) const {
        return adjective_words_.count(std::string(tok)) > 0;
    }

    std::size_t max_phrase_tokens() const { return max_phrase_tokens_; }

    /// Every token occurring in a support phrase or cue table, plus
    /// abbreviation keys. Feeds the spell-correction vocabulary.
    std::set<std::string> vocabulary_tokens() const;

    /// Longest support phrase starting exactly at `start`. Ties at equal
    /// length: noun support beats adjective support, then the smaller
    /// concept_id wins.
    std::optional<FactMatch> match_longest(const Tokens& tokens, std::size_t start) const;

    /// Greedy left-to-right longest-match cover; spans are disjoint and
    /// sorted by start index.
    std::vector<FactMatch> scan_all_matches(const Tokens& tokens) const;

private:
    struct IndexEntry {
        Tokens phrase;
        std::size_t fact_index;
        MatchVia via;
    };

    void add_fact(SupportedFact fact, int approx_line);
    void finalize();

    std::vector<SupportedFact> facts_;  // sorted by concept_id
    std::map<std::string, std::string> abbreviations_;
    std::set<std::string> severity_cues_;
    std::set<std::string> duration_cue_heads_;

    std::unordered_map<std::string, std::vector<IndexEntry>> phrase_index_;  // first token -> entries
    std::unordered_map<std::string, std::string> phrase_owner_;              // phrase -> concept_id
    std::set<std::string> noun_tokens_;
    std::set<std::string> adjective_words_;
    std::size_t max_phrase_tokens_ = 0;
};

// ---------------------------------------------------------------------------

namespace detail {

// Collapses whitespace and lowercases; rejects phrases that end up empty.
inline std::string normalize_phrase(std::string_view raw, int line) {
    Tokens toks = split_ws(to_lower(raw));
    if (toks.empty()) throw MalformedLexicon(line, "empty support phrase");
    return join(toks);
}

}  // namespace detail

inline Lexicon Lexicon::load_merged(const std::vector<std::filesystem::path>& paths) {
    using nlohmann::json;
    Lexicon lex;
    std::map<std::string, SupportedFact> by_concept;

    for (const auto& path : paths) {
        json doc;
        try {
            doc = json::parse(read_file(path.string()));
        } catch (const json::parse_error& e) {
            throw MalformedLexicon(0, std::string("json: ") + e.what());
        }
        if (!doc.is_object()) throw MalformedLexicon(0, "top level must be an object");

        for (const auto& jf : doc.value("facts", json::array())) {
            SupportedFact fact;
            fact.concept_id = jf.value("concept_id", "");
            fact.label = to_lower(jf.value("label", ""));
            if (fact.concept_id.empty()) throw MalformedLexicon(0, "fact without concept_id");
            if (fact.label.empty())
                throw MalformedLexicon(0, "empty label for concept " + fact.concept_id);
            fact.category = fact_category_from_string(jf.value("category", "sign_symptom"));
            for (const auto& s : jf.value("noun_supports", json::array()))
                fact.noun_supports.insert(detail::normalize_phrase(s.get<std::string>(), 0));
            for (const auto& s : jf.value("adjective_supports", json::array()))
                fact.adjective_supports.insert(detail::normalize_phrase(s.get<std::string>(), 0));
            // The canonical label always matches itself.
            fact.noun_supports.insert(detail::normalize_phrase(fact.label, 0));

            auto it = by_concept.find(fact.concept_id);
            if (it == by_concept.end()) {
                by_concept.emplace(fact.concept_id, std::move(fact));
            } else {
                if (it->second.label != fact.label)
                    throw MalformedLexicon(0, "conflicting labels for concept " + fact.concept_id);
                it->second.noun_supports.insert(fact.noun_supports.begin(),
                                                fact.noun_supports.end());
                it->second.adjective_supports.insert(fact.adjective_supports.begin(),
                                                     fact.adjective_supports.end());
            }
        }

        if (doc.contains("abbreviations")) {
            for (const auto& [key, val] : doc["abbreviations"].items()) {
                std::string k = to_lower(key);
                std::string v = detail::normalize_phrase(val.get<std::string>(), 0);
                auto it = lex.abbreviations_.find(k);
                if (it != lex.abbreviations_.end() && it->second != v)
                    throw MalformedLexicon(0, "conflicting expansions for abbreviation '" + k + "'");
                lex.abbreviations_[k] = v;
            }
        }
        for (const auto& s : doc.value("severity_cues", json::array()))
            lex.severity_cues_.insert(detail::normalize_phrase(s.get<std::string>(), 0));
        for (const auto& s : doc.value("duration_cue_heads", json::array()))
            lex.duration_cue_heads_.insert(detail::normalize_phrase(s.get<std::string>(), 0));
    }

    for (const auto& cue : lex.severity_cues_)
        if (lex.abbreviations_.count(cue))
            throw MalformedLexicon(0, "'" + cue + "' is both a severity cue and an abbreviation");

    for (auto& [id, fact] : by_concept) lex.add_fact(std::move(fact), 0);
    lex.finalize();
    return lex;
}

inline void Lexicon::add_fact(SupportedFact fact, int approx_line) {
    const std::size_t idx = facts_.size();
    auto claim = [&](const std::string& phrase) {
        auto [it, inserted] = phrase_owner_.emplace(phrase, fact.concept_id);
        if (!inserted && it->second != fact.concept_id)
            throw MalformedLexicon(approx_line, "support phrase '" + phrase +
                                                    "' appears under concepts " + it->second +
                                                    " and " + fact.concept_id);
    };
    for (const auto& p : fact.noun_supports) claim(p);
    for (const auto& p : fact.adjective_supports) claim(p);
    facts_.push_back(std::move(fact));
    (void)idx;
}

inline void Lexicon::finalize() {
    // Facts sorted by concept_id: load order never leaks into behaviour.
    std::sort(facts_.begin(), facts_.end(),
              [](const SupportedFact& a, const SupportedFact& b) {
                  return a.concept_id < b.concept_id;
              });
    phrase_index_.clear();
    noun_tokens_.clear();
    adjective_words_.clear();
    max_phrase_tokens_ = 0;

    for (std::size_t i = 0; i < facts_.size(); ++i) {
        auto index_phrase = [&](const std::string& phrase, MatchVia via) {
            Tokens toks = split_ws(phrase);
            max_phrase_tokens_ = std::max(max_phrase_tokens_, toks.size());
            if (via == MatchVia::Noun)
                for (const auto& t : toks) noun_tokens_.insert(t);
            else if (toks.size() == 1)
                adjective_words_.insert(toks[0]);
            phrase_index_[toks[0]].push_back(IndexEntry{std::move(toks), i, via});
        };
        for (const auto& p : facts_[i].noun_supports) index_phrase(p, MatchVia::Noun);
        for (const auto& p : facts_[i].adjective_supports) index_phrase(p, MatchVia::Adjective);
    }

    for (auto& [first, entries] : phrase_index_) {
        std::sort(entries.begin(), entries.end(),
                  [this](const IndexEntry& a, const IndexEntry& b) {
                      if (a.phrase.size() != b.phrase.size())
                          return a.phrase.size() > b.phrase.size();
                      if (a.via != b.via) return a.via == MatchVia::Noun;
                      if (facts_[a.fact_index].concept_id != facts_[b.fact_index].concept_id)
                          return facts_[a.fact_index].concept_id < facts_[b.fact_index].concept_id;
                      return a.phrase < b.phrase;
                  });
    }
}

inline std::string Lexicon::dump() const {
    using nlohmann::json;
    json doc;
    json facts = json::array();
    for (const auto& f : facts_) {
        json jf;
        jf["concept_id"] = f.concept_id;
        jf["label"] = f.label;
        jf["category"] = to_string(f.category);
        jf["noun_supports"] = json(std::vector<std::string>(f.noun_supports.begin(),
                                                            f.noun_supports.end()));
        jf["adjective_supports"] = json(std::vector<std::string>(f.adjective_supports.begin(),
                                                                 f.adjective_supports.end()));
        facts.push_back(std::move(jf));
    }
    doc["facts"] = std::move(facts);
    doc["abbreviations"] = json(abbreviations_);
    doc["severity_cues"] =
        json(std::vector<std::string>(severity_cues_.begin(), severity_cues_.end()));
    doc["duration_cue_heads"] =
        json(std::vector<std::string>(duration_cue_heads_.begin(), duration_cue_heads_.end()));
    return doc.dump(2) + "\n";
}

inline std::optional<FactMatch> Lexicon::match_longest(const Tokens& tokens,
                                                       std::size_t start) const {
    if (start >= tokens.size()) return std::nullopt;
    auto it = phrase_index_.find(tokens[start]);
    if (it == phrase_index_.end()) return std::nullopt;
    for (const auto& entry : it->second) {  // entries pre-sorted by priority
        if (start + entry.phrase.size() > tokens.size()) continue;
        bool ok = true;
        for (std::size_t k = 1; k < entry.phrase.size(); ++k) {
            if (tokens[start + k] != entry.phrase[k]) {
                ok = false;
                break;
            }
        }
        if (ok)
            return FactMatch{entry.fact_index, start, start + entry.phrase.size(), entry.via};
    }
    return std::nullopt;
}

inline std::vector<FactMatch> Lexicon::scan_all_matches(const Tokens& tokens) const {
    std::vector<FactMatch> out;
    std::size_t i = 0;
    while (i < tokens.size()) {
        if (auto m = match_longest(tokens, i)) {
            i = m->end;
            out.push_back(*m);
        } else {
            ++i;
        }
    }
    return out;
}

inline std::set<std::string> Lexicon::vocabulary_tokens() const {
    std::set<std::string> out;
    for (const auto& f : facts_) {
        for (const auto& p : f.noun_supports)
            for (const auto& t : split_ws(p)) out.insert(t);
        for (const auto& p : f.adjective_supports)
            for (const auto& t : split_ws(p)) out.insert(t);
    }
    for (const auto& c : severity_cues_) out.insert(c);
    for (const auto& c : duration_cue_heads_) out.insert(c);
    for (const auto& [k, v] : abbreviations_) {
        out.insert(k);
        for (const auto& t : split_ws(v)) out.insert(t);
    }
    return out;
}

}  // namespace notekg
