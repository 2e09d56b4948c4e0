#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "notekg/common.hpp"

namespace notekg::words {

// Closed-class word tables shared by the pre-processor and the tagger.
// Everything here is static English function-word knowledge; clinical
// vocabulary lives in the lexicon files.

inline const std::unordered_set<std::string>& determiners() {
    static const std::unordered_set<std::string> t = {"the", "a", "an"};
    return t;
}

inline const std::unordered_set<std::string>& prepositions() {
    static const std::unordered_set<std::string> t = {
        "of", "in", "on", "at", "for", "with", "to", "from", "by",
        "since", "during", "after", "before", "over", "under", "about"};
    return t;
}

inline const std::unordered_set<std::string>& conjunctions() {
    static const std::unordered_set<std::string> t = {"and", "or", ","};
    return t;
}

inline const std::unordered_set<std::string>& modals() {
    static const std::unordered_set<std::string> t = {
        "can", "cannot", "could", "will", "would", "may",
        "might", "must", "shall", "should", "unable"};
    return t;
}

inline const std::unordered_set<std::string>& negators() {
    static const std::unordered_set<std::string> t = {"no", "not", "never", "denies"};
    return t;
}

// Plain adverbs that may pre-modify adjectives or trail a verb phrase.
inline const std::unordered_set<std::string>& adverbs() {
    static const std::unordered_set<std::string> t = {
        "even", "only", "very", "quite", "really", "still", "more",
        "less", "most", "too", "also", "much", "mostly", "again", "ago"};
    return t;
}

// Adjectives that are neither severity cues nor lexicon supports but occur
// in duration and descriptive phrases.
inline const std::unordered_set<std::string>& plain_adjectives() {
    static const std::unordered_set<std::string> t = {"last", "past", "deep", "new", "recent"};
    return t;
}

// Verb forms of have/be/do, keyed to their tag.
enum class VerbForm { Vbz, Vb, Vbd };

inline std::optional<VerbForm> verb_form(std::string_view tok) {
    static const std::unordered_map<std::string, VerbForm> t = {
        {"has", VerbForm::Vbz}, {"is", VerbForm::Vbz},  {"are", VerbForm::Vbz},
        {"am", VerbForm::Vbz},  {"does", VerbForm::Vbz},
        {"have", VerbForm::Vb}, {"do", VerbForm::Vb},   {"be", VerbForm::Vb},
        {"been", VerbForm::Vb},
        {"had", VerbForm::Vbd}, {"was", VerbForm::Vbd}, {"were", VerbForm::Vbd},
        {"did", VerbForm::Vbd}};
    auto it = t.find(std::string(tok));
    if (it == t.end()) return std::nullopt;
    return it->second;
}

inline const std::unordered_map<std::string, int>& number_words() {
    static const std::unordered_map<std::string, int> t = {
        {"one", 1},   {"two", 2},   {"three", 3}, {"four", 4},   {"five", 5},
        {"six", 6},   {"seven", 7}, {"eight", 8}, {"nine", 9},   {"ten", 10},
        {"eleven", 11}, {"twelve", 12}, {"twenty", 20},
        {"couple", 2}, {"few", 3},  {"several", 3}};
    return t;
}

inline bool is_number_word(std::string_view tok) {
    return number_words().count(std::string(tok)) > 0;
}

// Time-unit nouns with their length in days.
inline const std::unordered_map<std::string, int>& time_units() {
    static const std::unordered_map<std::string, int> t = {
        {"day", 1},   {"days", 1},   {"week", 7},   {"weeks", 7},
        {"month", 30}, {"months", 30}, {"year", 365}, {"years", 365},
        {"hour", 0},  {"hours", 0},  {"minute", 0}, {"minutes", 0},
        {"night", 0}};
    return t;
}

inline bool is_time_unit(std::string_view tok) {
    return time_units().count(std::string(tok)) > 0;
}

// Standalone words that denote a point in time.
inline const std::unordered_set<std::string>& time_points() {
    static const std::unordered_set<std::string> t = {"yesterday", "today", "tonight"};
    return t;
}

inline const std::unordered_set<std::string>& duration_modifiers() {
    static const std::unordered_set<std::string> t = {"last", "past", "a", "an", "the"};
    return t;
}

// Subject words a hasty note may start with instead of "the patient".
inline const std::unordered_set<std::string>& subject_words() {
    static const std::unordered_set<std::string> t = {"patient", "pt", "she", "he", "they"};
    return t;
}

// "-ing" words that are ordinary nouns, not gerunds.
inline const std::unordered_set<std::string>& gerund_exceptions() {
    static const std::unordered_set<std::string> t = {
        "morning", "evening", "nothing", "something", "anything", "everything"};
    return t;
}

inline bool looks_like_gerund(std::string_view tok) {
    return tok.size() > 4 && tok.substr(tok.size() - 3) == "ing" &&
           gerund_exceptions().count(std::string(tok)) == 0;
}

// ---------------------------------------------------------------------------
// Duration chunk detection.
//
// A duration chunk is a token run such as "for three days", "couple weeks",
// "last 2 days", "since yesterday" or "two days ago". A chunk ends right
// after the token that completes it (time unit, time point, or "ago") so
// that adjacent chunks like "couple weeks last 2 days" split in two.

struct DurationChunk {
    std::size_t begin = 0;
    std::size_t end = 0;  // half-open
};

namespace detail {
inline bool duration_filler(const std::string& tok) {
    return duration_modifiers().count(tok) > 0 || is_number_word(tok) ||
           (contains_digit(tok) && tok.size() <= 4);
}
}  // namespace detail

// Returns the chunk starting exactly at `start`, if any.
inline std::optional<DurationChunk> duration_chunk_at(const Tokens& tokens, std::size_t start) {
    std::size_t i = start;
    const std::size_t n = tokens.size();
    if (i >= n) return std::nullopt;
    bool saw_cue = false;
    if (tokens[i] == "for" || tokens[i] == "since") {
        saw_cue = true;
        ++i;
    }
    bool saw_filler = false;
    while (i < n && detail::duration_filler(tokens[i])) {
        saw_filler = true;
        ++i;
    }
    if (i < n && (is_time_unit(tokens[i]) || time_points().count(tokens[i]) > 0)) {
        // "three days" / "since yesterday"; may be completed by "ago".
        std::size_t end = i + 1;
        if (end < n && tokens[end] == "ago") ++end;
        // A bare unit with nothing around it ("weeks") is not a chunk; a
        // time point ("yesterday") or a unit completed by "ago" is.
        if (!saw_cue && !saw_filler && is_time_unit(tokens[i]) && end == i + 1)
            return std::nullopt;
        return DurationChunk{start, end};
    }
    if (i < n && tokens[i] == "ago" && saw_filler) return DurationChunk{start, i + 1};
    return std::nullopt;
}

inline bool begins_duration_chunk(const Tokens& tokens, std::size_t i) {
    return duration_chunk_at(tokens, i).has_value();
}

}  // namespace notekg::words
