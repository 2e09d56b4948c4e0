#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "notekg/common.hpp"
#include "notekg/lexicon.hpp"
#include "notekg/wordclass.hpp"

namespace notekg {

struct RawNote {
    std::string note_id;
    std::string text;
};

inline constexpr std::size_t kMaxNoteChars = 10000;

inline void validate_note(const RawNote& note) {
    if (note.note_id.empty()) throw InvalidNote("note_id must be nonempty");
    if (note.text.size() > kMaxNoteChars)
        throw InvalidNote("note text exceeds " + std::to_string(kMaxNoteChars) + " characters");
}

/// One delimiter-bounded slice of a note, tokenized and lowercased.
struct Segment {
    Tokens tokens;
    std::size_t span_begin = 0;  // character range in the raw note text
    std::size_t span_end = 0;
    std::string original_text;   // raw slice, trimmed
};

enum class Pattern {
    NegatedNounPhrase,
    NounPhraseOrList,
    AdjectivePhrase,
    VerbPhrase,
    AlreadyComplete,
    Unexpandable,
};

inline std::string to_string(Pattern p) {
    switch (p) {
        case Pattern::NegatedNounPhrase: return "negated_noun_phrase";
        case Pattern::NounPhraseOrList: return "noun_phrase_or_list";
        case Pattern::AdjectivePhrase: return "adjective_phrase";
        case Pattern::VerbPhrase: return "verb_phrase";
        case Pattern::AlreadyComplete: return "already_complete";
        case Pattern::Unexpandable: return "unexpandable";
    }
    return "?";
}

enum class Polarity { Affirmed, Negated };

/// A subject-bearing sentence produced from one segment. A segment can
/// yield several sentences when it packs multiple described findings
/// ("headache couple weeks ... and cough slight sob").
struct ExpandedSentence {
    Tokens tokens;
    Pattern pattern = Pattern::Unexpandable;
    Polarity polarity = Polarity::Affirmed;
    std::size_t segment_index = 0;
};

// ---------------------------------------------------------------------------
// Spell correction
// ---------------------------------------------------------------------------

/// Optimal-string-alignment distance (Damerau-Levenshtein with adjacent
/// transposition), capped: returns cap+1 as soon as the distance must
/// exceed cap.
inline std::size_t osa_distance(const std::string& a, const std::string& b, std::size_t cap) {
    const std::size_t n = a.size(), m = b.size();
    const std::size_t big = cap + 1;
    if (n > m + cap || m > n + cap) return big;
    std::vector<std::size_t> prev2(m + 1), prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        std::size_t row_min = cur[0];
        for (std::size_t j = 1; j <= m; ++j) {
            std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
            if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
                cur[j] = std::min(cur[j], prev2[j - 2] + 1);
            row_min = std::min(row_min, cur[j]);
        }
        if (row_min > cap) return big;
        std::swap(prev2, prev);
        std::swap(prev, cur);
    }
    return std::min(prev[m], big);
}

/// Nearest-vocabulary correction. Tokens that are short, in-vocabulary, or
/// carry digits (dosages, phone codes like "111") pass through untouched.
inline std::string correct_spelling(const std::string& token,
                                    const std::set<std::string>& vocabulary) {
    if (token.size() <= 3 || contains_digit(token) || vocabulary.count(token)) return token;
    const std::size_t threshold = token.size() <= 6 ? 1 : 2;
    std::string best;
    std::size_t best_dist = threshold + 1;
    for (const auto& word : vocabulary) {
        std::size_t d = osa_distance(token, word, threshold);
        if (d < best_dist || (d == best_dist && d <= threshold && word < best)) {
            best_dist = d;
            best = word;
        }
    }
    return best_dist <= threshold ? best : token;
}

/// Everything the spell corrector may map onto that is not in the bundled
/// word list: lexicon vocabulary plus the closed-class tables.
inline std::set<std::string> build_vocabulary(const Lexicon& lexicon,
                                              const std::set<std::string>& word_list = {}) {
    std::set<std::string> vocab = lexicon.vocabulary_tokens();
    vocab.insert(word_list.begin(), word_list.end());
    for (const auto& w : words::determiners()) vocab.insert(w);
    for (const auto& w : words::prepositions()) vocab.insert(w);
    for (const auto& w : words::conjunctions()) vocab.insert(w);
    for (const auto& w : words::modals()) vocab.insert(w);
    for (const auto& w : words::negators()) vocab.insert(w);
    for (const auto& w : words::adverbs()) vocab.insert(w);
    for (const auto& w : words::plain_adjectives()) vocab.insert(w);
    for (const auto& [w, n] : words::number_words()) vocab.insert(w);
    for (const auto& [w, n] : words::time_units()) vocab.insert(w);
    for (const auto& w : words::time_points()) vocab.insert(w);
    for (const auto& w : words::subject_words()) vocab.insert(w);
    for (const char* w : {"has", "is", "are", "am", "does", "have", "do", "be", "been",
                          "had", "was", "were", "did"})
        vocab.insert(w);
    vocab.erase(",");
    return vocab;
}

// ---------------------------------------------------------------------------
// Abbreviations and contractions
// ---------------------------------------------------------------------------

namespace detail {
inline const std::map<std::string, Tokens>& contractions() {
    static const std::map<std::string, Tokens> t = {
        {"cannot", {"can", "not"}},   {"can't", {"can", "not"}},
        {"won't", {"will", "not"}},   {"doesn't", {"does", "not"}},
        {"don't", {"do", "not"}},     {"didn't", {"did", "not"}},
        {"isn't", {"is", "not"}},     {"wasn't", {"was", "not"}},
        {"hasn't", {"has", "not"}},   {"haven't", {"have", "not"}},
    };
    return t;
}
}  // namespace detail

/// Expands lexicon abbreviations ("sob" -> "shortness of breath") and
/// negative contractions ("can't" -> "can not", so the tagger sees an
/// explicit negator).
inline Tokens expand_abbreviations(const Tokens& tokens, const Lexicon& lexicon) {
    Tokens out;
    out.reserve(tokens.size());
    for (const auto& tok : tokens) {
        auto abbr = lexicon.abbreviations().find(tok);
        if (abbr != lexicon.abbreviations().end()) {
            for (const auto& t : split_ws(abbr->second)) out.push_back(t);
            continue;
        }
        auto con = detail::contractions().find(tok);
        if (con != detail::contractions().end()) {
            out.insert(out.end(), con->second.begin(), con->second.end());
            continue;
        }
        out.push_back(tok);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Splitting
// ---------------------------------------------------------------------------

inline std::vector<Segment> split_passage(const RawNote& note) {
    validate_note(note);
    auto is_delim = [](char c) {
        return c == '.' || c == ',' || c == ';' || c == ':' || c == '\n';
    };
    std::vector<Segment> segments;
    std::size_t start = 0;
    const std::string& text = note.text;
    for (std::size_t pos = 0; pos <= text.size(); ++pos) {
        if (pos < text.size() && !is_delim(text[pos])) continue;
        std::size_t begin = start, end = pos;
        start = pos + 1;
        while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
        while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
        if (begin == end) continue;
        Segment seg;
        seg.span_begin = begin;
        seg.span_end = end;
        seg.original_text = text.substr(begin, end - begin);
        for (auto& raw : split_ws(to_lower(seg.original_text))) {
            std::string tok = strip_edge_punct(raw);
            if (!tok.empty()) seg.tokens.push_back(std::move(tok));
        }
        if (!seg.tokens.empty()) segments.push_back(std::move(seg));
    }
    if (segments.empty()) throw EmptyNote(note.note_id);
    return segments;
}

// ---------------------------------------------------------------------------
// Concept-group parsing (the token-shape engine behind the four patterns)
// ---------------------------------------------------------------------------

namespace detail {

/// One described finding inside a segment: optional pre-modifiers, a
/// lexicon concept, and an optional duration chunk.
struct ConceptGroup {
    Tokens premods;
    std::optional<FactMatch> found;
    Tokens concept_tokens;
    MatchVia via = MatchVia::Noun;
    Tokens duration;              // chunk tokens, cue preposition stripped
    std::string duration_cue;     // original cue ("for"/"since"), empty if none
    std::string lead_connective;  // connective found before this group, if any
};

inline bool is_premod_word(const std::string& tok, const Lexicon& lex) {
    return lex.is_severity_cue(tok) || words::adverbs().count(tok) > 0 ||
           words::plain_adjectives().count(tok) > 0 || words::determiners().count(tok) > 0 ||
           (tok.size() > 3 && tok.ends_with("ly"));
}

/// Splits a segment into concept groups. Returns nullopt when any token
/// resists classification — the caller then falls through to the weaker
/// patterns or Unexpandable.
inline std::optional<std::vector<ConceptGroup>> parse_groups(const Tokens& tokens,
                                                             const Lexicon& lex) {
    std::vector<ConceptGroup> groups;
    ConceptGroup cur;
    std::optional<ConceptGroup> pending;  // duration seen before its concept
    bool cur_open = false;

    auto close = [&]() -> bool {
        if (!cur.found) return false;
        groups.push_back(std::move(cur));
        cur = ConceptGroup{};
        cur_open = false;
        return true;
    };

    std::size_t i = 0;
    while (i < tokens.size()) {
        const std::string& tok = tokens[i];
        if (tok == "and" || tok == "or") {
            if (!cur_open || !close()) return std::nullopt;
            cur.lead_connective = tok;
            cur_open = true;
            ++i;
            continue;
        }
        if (auto chunk = words::duration_chunk_at(tokens, i)) {
            Tokens body(tokens.begin() + chunk->begin, tokens.begin() + chunk->end);
            std::string cue;
            if (!body.empty() && lex.is_duration_cue_head(body.front())) {
                cue = body.front();
                body.erase(body.begin());
            }
            if (cur.found && cur.duration.empty()) {
                cur.duration = std::move(body);
                cur.duration_cue = cue;
            } else if (cur.found) {
                if (!close()) return std::nullopt;
                if (pending) return std::nullopt;
                pending = ConceptGroup{};
                pending->duration = std::move(body);
                pending->duration_cue = cue;
            } else {
                if (pending) return std::nullopt;
                pending = ConceptGroup{};
                pending->duration = std::move(body);
                pending->duration_cue = cue;
            }
            i = chunk->end;
            continue;
        }
        if (auto m = lex.match_longest(tokens, i)) {
            if (cur.found && !close()) return std::nullopt;
            cur.found = m;
            cur.concept_tokens.assign(tokens.begin() + m->begin, tokens.begin() + m->end);
            cur.via = m->via;
            cur_open = true;
            if (pending) {
                cur.duration = std::move(pending->duration);
                cur.duration_cue = std::move(pending->duration_cue);
                pending.reset();
            }
            i = m->end;
            continue;
        }
        if (is_premod_word(tok, lex)) {
            if (cur.found && !close()) return std::nullopt;
            cur.premods.push_back(tok);
            cur_open = true;
            ++i;
            continue;
        }
        return std::nullopt;
    }
    if (cur_open && !close()) return std::nullopt;
    if (pending) {
        if (!groups.empty() && groups.back().duration.empty()) {
            groups.back().duration = std::move(pending->duration);
            groups.back().duration_cue = std::move(pending->duration_cue);
        } else {
            return std::nullopt;
        }
    }
    if (groups.empty()) return std::nullopt;
    return groups;
}

inline bool bare_noun_group(const ConceptGroup& g) {
    return g.premods.empty() && g.duration.empty() && g.via == MatchVia::Noun;
}

inline void append_duration(Tokens& out, const ConceptGroup& g) {
    if (g.duration.empty()) return;
    if (!g.duration_cue.empty())
        out.push_back(g.duration_cue);
    else if (g.duration.back() != "ago")
        out.push_back("for");  // "couple weeks" reads as "for couple weeks"
    out.insert(out.end(), g.duration.begin(), g.duration.end());
}

inline ExpandedSentence render_group(const ConceptGroup& g, bool negated,
                                     std::size_t seg_index) {
    ExpandedSentence s;
    s.segment_index = seg_index;
    s.polarity = negated ? Polarity::Negated : Polarity::Affirmed;
    s.tokens = {"the", "patient"};
    if (g.via == MatchVia::Adjective) {
        s.pattern = negated ? Pattern::NegatedNounPhrase : Pattern::AdjectivePhrase;
        s.tokens.push_back("is");
        if (negated) s.tokens.push_back("not");
    } else {
        s.pattern = negated ? Pattern::NegatedNounPhrase : Pattern::NounPhraseOrList;
        if (negated) {
            s.tokens.insert(s.tokens.end(), {"does", "not", "have"});
        } else {
            s.tokens.push_back("has");
        }
    }
    s.tokens.insert(s.tokens.end(), g.premods.begin(), g.premods.end());
    s.tokens.insert(s.tokens.end(), g.concept_tokens.begin(), g.concept_tokens.end());
    append_duration(s.tokens, g);
    return s;
}

inline ExpandedSentence render_list(const std::vector<ConceptGroup>& groups, bool negated,
                                    std::size_t seg_index) {
    ExpandedSentence s;
    s.segment_index = seg_index;
    s.polarity = negated ? Polarity::Negated : Polarity::Affirmed;
    s.pattern = negated ? Pattern::NegatedNounPhrase : Pattern::NounPhraseOrList;
    s.tokens = {"the", "patient"};
    if (negated) {
        s.tokens.insert(s.tokens.end(), {"does", "not", "have"});
    } else {
        s.tokens.push_back("has");
    }
    const std::string fill_connective = negated ? "or" : "and";
    for (std::size_t k = 0; k < groups.size(); ++k) {
        if (k > 0) {
            if (!groups[k].lead_connective.empty())
                s.tokens.push_back(groups[k].lead_connective);
            else if (k + 1 == groups.size())
                s.tokens.push_back(fill_connective);
            else
                s.tokens.push_back(",");
        }
        s.tokens.insert(s.tokens.end(), groups[k].concept_tokens.begin(),
                        groups[k].concept_tokens.end());
    }
    return s;
}

inline std::vector<ExpandedSentence> render_groups(const std::vector<ConceptGroup>& groups,
                                                   bool negated, std::size_t seg_index) {
    bool all_bare = std::all_of(groups.begin(), groups.end(), bare_noun_group);
    if (all_bare && groups.size() >= 2) return {render_list(groups, negated, seg_index)};
    std::vector<ExpandedSentence> out;
    out.reserve(groups.size());
    for (const auto& g : groups) out.push_back(render_group(g, negated, seg_index));
    return out;
}

inline bool has_negator(const Tokens& toks) {
    return std::any_of(toks.begin(), toks.end(),
                       [](const std::string& t) { return words::negators().count(t) > 0; });
}

inline ExpandedSentence unexpandable(const Segment& seg, std::size_t seg_index) {
    ExpandedSentence s;
    s.tokens = seg.tokens;
    s.pattern = Pattern::Unexpandable;
    s.polarity = has_negator(seg.tokens) ? Polarity::Negated : Polarity::Affirmed;
    s.segment_index = seg_index;
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pattern expansion
// ---------------------------------------------------------------------------

/// Expands one segment into subject-bearing sentences. The segment tokens
/// must already be spell-corrected and abbreviation-expanded.
inline std::vector<ExpandedSentence> expand_segment(const Segment& seg, const Lexicon& lex,
                                                    std::size_t seg_index = 0) {
    using namespace detail;
    const Tokens& toks = seg.tokens;
    if (toks.empty()) return {unexpandable(seg, seg_index)};

    // Subject normalization: "pt ...", "she ...", "the patient ..." forms.
    std::size_t subj_len = 0;
    if (toks.size() >= 2 && toks[0] == "the" && toks[1] == "patient")
        subj_len = 2;
    else if (words::subject_words().count(toks[0]) > 0)
        subj_len = 1;

    Tokens body(toks.begin() + subj_len, toks.end());
    if (body.empty()) return {unexpandable(seg, seg_index)};

    if (subj_len > 0 && body[0] != "denies") {
        if (words::verb_form(body[0]) || words::modals().count(body[0]) > 0) {
            // Already subject+verb; keep verbatim so re-preprocessing an
            // expanded sentence is the identity.
            ExpandedSentence s;
            s.tokens = {"the", "patient"};
            s.tokens.insert(s.tokens.end(), body.begin(), body.end());
            s.pattern = Pattern::AlreadyComplete;
            s.polarity = has_negator(body) ? Polarity::Negated : Polarity::Affirmed;
            s.segment_index = seg_index;
            return {s};
        }
        // Subject with no verb ("pt fever and cough"): fall through and
        // expand the remainder.
    }

    // Pattern 1: negated noun phrase.
    if (words::negators().count(body[0]) > 0) {
        Tokens rest(body.begin() + 1, body.end());
        if (!rest.empty()) {
            if (auto groups = parse_groups(rest, lex))
                return render_groups(*groups, /*negated=*/true, seg_index);
        }
        return {unexpandable(seg, seg_index)};
    }

    // Pattern 4a: gerund head ("coughing", even when the word is also a
    // lexicon support — the verb reading wins for -ing heads).
    if (words::looks_like_gerund(body[0])) {
        ExpandedSentence s;
        s.tokens = {"the", "patient", "is"};
        s.tokens.insert(s.tokens.end(), body.begin(), body.end());
        s.pattern = Pattern::VerbPhrase;
        s.polarity = Polarity::Affirmed;
        s.segment_index = seg_index;
        return {s};
    }

    // Pattern 4b: modal head ("can talk"; "can not walk" after contraction
    // expansion).
    if (words::modals().count(body[0]) > 0) {
        ExpandedSentence s;
        s.tokens = {"the", "patient"};
        if (body[0] == "unable") s.tokens.push_back("is");
        s.tokens.insert(s.tokens.end(), body.begin(), body.end());
        s.pattern = Pattern::VerbPhrase;
        s.polarity = has_negator(body) ? Polarity::Negated : Polarity::Affirmed;
        s.segment_index = seg_index;
        return {s};
    }

    // Patterns 2 and 3: noun phrase(s) / adjective phrase over lexicon
    // concepts, with optional severities and duration chunks.
    if (auto groups = parse_groups(body, lex))
        return render_groups(*groups, /*negated=*/false, seg_index);

    // A timing fragment with no finding ("for three days") says nothing by
    // itself; keep it observable as unexpandable.
    if (auto chunk = words::duration_chunk_at(body, 0); chunk && chunk->end == body.size())
        return {unexpandable(seg, seg_index)};

    // Pattern 3 fallbacks: bare adjectival or adverbial predicates
    // ("severe", "even on minimal effort").
    bool all_premod = std::all_of(body.begin(), body.end(), [&](const std::string& t) {
        return is_premod_word(t, lex) && words::determiners().count(t) == 0;
    });
    bool adv_head = words::adverbs().count(body[0]) > 0 ||
                    words::prepositions().count(body[0]) > 0 ||
                    (body[0].size() > 3 && body[0].ends_with("ly"));
    if (all_premod || adv_head) {
        ExpandedSentence s;
        s.tokens = {"the", "patient", "is"};
        s.tokens.insert(s.tokens.end(), body.begin(), body.end());
        s.pattern = Pattern::AdjectivePhrase;
        s.polarity = Polarity::Affirmed;
        s.segment_index = seg_index;
        return {s};
    }

    return {unexpandable(seg, seg_index)};
}

// ---------------------------------------------------------------------------
// Whole-note driver
// ---------------------------------------------------------------------------

struct PreprocessResult {
    std::vector<Segment> segments;
    std::vector<ExpandedSentence> sentences;
};

inline PreprocessResult preprocess_note_full(const RawNote& note, const Lexicon& lexicon,
                                             const std::set<std::string>* vocabulary = nullptr) {
    std::set<std::string> derived;
    if (!vocabulary) {
        derived = build_vocabulary(lexicon, {});
        vocabulary = &derived;
    }
    PreprocessResult result;
    result.segments = split_passage(note);
    for (std::size_t si = 0; si < result.segments.size(); ++si) {
        Segment& seg = result.segments[si];
        for (auto& tok : seg.tokens) tok = correct_spelling(tok, *vocabulary);
        seg.tokens = expand_abbreviations(seg.tokens, lexicon);
        for (auto& sentence : expand_segment(seg, lexicon, si))
            result.sentences.push_back(std::move(sentence));
    }
    return result;
}

inline std::vector<ExpandedSentence> preprocess_note(const RawNote& note, const Lexicon& lexicon,
                                                     const std::set<std::string>* vocabulary =
                                                         nullptr) {
    return preprocess_note_full(note, lexicon, vocabulary).sentences;
}

/// All expanded tokens joined into one string; the reference side of the
/// reconstruction similarity score.
inline std::string preprocessed_text(const std::vector<ExpandedSentence>& sentences) {
    Tokens all;
    for (const auto& s : sentences) all.insert(all.end(), s.tokens.begin(), s.tokens.end());
    return join(all);
}

}  // namespace notekg
