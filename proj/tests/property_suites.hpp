#pragma once

// The six randomized property suites. Each suite checks a component against
// an independently coded oracle (or an algebraic invariant) over hundreds of
// generated cases and returns the number of cases it ran, so the acceptance
// binary can verify coverage and runtime in one place while the per-module
// binaries reuse the same drivers for failure localization.

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <notekg/pipeline.hpp>

#include "test_util.hpp"

namespace suites {

using notekg::Tokens;

// ===========================================================================
// 1. Lexicon matching vs a brute-force enumerator
// ===========================================================================

namespace lexdetail {

struct PhraseEntry {
    Tokens phrase;
    std::string concept_id;
    notekg::MatchVia via;
};

/// Tries every phrase at every position; at each position keeps the best
/// match by (longest, noun-before-adjective, smallest concept id), then
/// skips past it — the documented greedy scan, written over a flat list.
inline std::vector<std::tuple<std::size_t, std::size_t, std::string, notekg::MatchVia>>
brute_force_scan(const Tokens& tokens, const std::vector<PhraseEntry>& entries) {
    std::vector<std::tuple<std::size_t, std::size_t, std::string, notekg::MatchVia>> out;
    std::size_t i = 0;
    while (i < tokens.size()) {
        const PhraseEntry* best = nullptr;
        for (const auto& e : entries) {
            if (i + e.phrase.size() > tokens.size()) continue;
            if (!std::equal(e.phrase.begin(), e.phrase.end(), tokens.begin() + i)) continue;
            if (!best) {
                best = &e;
                continue;
            }
            if (e.phrase.size() != best->phrase.size()) {
                if (e.phrase.size() > best->phrase.size()) best = &e;
                continue;
            }
            bool e_noun = e.via == notekg::MatchVia::Noun;
            bool b_noun = best->via == notekg::MatchVia::Noun;
            if (e_noun != b_noun) {
                if (e_noun) best = &e;
                continue;
            }
            if (e.concept_id < best->concept_id) best = &e;
        }
        if (best) {
            out.emplace_back(i, i + best->phrase.size(), best->concept_id, best->via);
            i += best->phrase.size();
        } else {
            ++i;
        }
    }
    return out;
}

inline std::string lexicon_json(const std::vector<PhraseEntry>& entries,
                                const std::vector<std::string>& concept_ids) {
    // Group phrases per concept into a lexicon file.
    std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>> per;
    for (const auto& id : concept_ids) per[id];
    for (const auto& e : entries) {
        auto& bucket = per[e.concept_id];
        auto& list = e.via == notekg::MatchVia::Noun ? bucket.first : bucket.second;
        list.push_back(notekg::join(e.phrase));
    }
    std::ostringstream doc;
    doc << "{\"facts\":[";
    bool first = true;
    for (const auto& [id, lists] : per) {
        if (!first) doc << ",";
        first = false;
        doc << "{\"concept_id\":\"" << id << "\",\"label\":\"label " << id
            << "\",\"category\":\"sign_symptom\",\"noun_supports\":[";
        for (std::size_t i = 0; i < lists.first.size(); ++i)
            doc << (i ? "," : "") << "\"" << lists.first[i] << "\"";
        doc << "],\"adjective_supports\":[";
        for (std::size_t i = 0; i < lists.second.size(); ++i)
            doc << (i ? "," : "") << "\"" << lists.second[i] << "\"";
        doc << "]}";
    }
    doc << "],\"abbreviations\":{},\"severity_cues\":[],\"duration_cue_heads\":[]}";
    return doc.str();
}

}  // namespace lexdetail

inline std::size_t run_lexicon_matching_suite() {
    std::mt19937 rng(20240811);
    const std::vector<std::string> word_pool = {"ache",  "pain", "chest", "head", "skin",
                                                "night", "dry",  "sore",  "leg",  "arm",
                                                "deep",  "back", "eye",   "gut",  "red"};
    auto rand_int = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };

    std::size_t cases = 0;
    for (int iter = 0; iter < 220; ++iter) {
        // Random lexicon: 2..6 concepts, phrases of 1..3 tokens, disjoint
        // across concepts; ~1 in 5 lexicons list the same phrase as both a
        // noun and an adjective support of one concept (the tie case).
        int n_concepts = rand_int(2, 6);
        std::vector<std::string> ids;
        for (int c = 0; c < n_concepts; ++c) ids.push_back("c" + std::to_string(10 + c));

        std::set<std::string> used;
        std::vector<lexdetail::PhraseEntry> entries;
        for (const auto& id : ids) {
            int n_phrases = rand_int(1, 3);
            for (int p = 0; p < n_phrases; ++p) {
                Tokens phrase;
                int len = rand_int(1, 3);
                for (int t = 0; t < len; ++t)
                    phrase.push_back(word_pool[static_cast<std::size_t>(
                        rand_int(0, static_cast<int>(word_pool.size()) - 1))]);
                std::string key = notekg::join(phrase);
                if (used.count(key)) continue;
                used.insert(key);
                auto via = rand_int(0, 3) == 0 ? notekg::MatchVia::Adjective
                                               : notekg::MatchVia::Noun;
                entries.push_back({phrase, id, via});
                if (via == notekg::MatchVia::Noun && len == 1 && rand_int(0, 4) == 0)
                    entries.push_back({phrase, id, notekg::MatchVia::Adjective});
            }
        }
        if (entries.empty()) continue;

        std::string path = testutil::scratch().write(
            "prop_lexicon.json", lexdetail::lexicon_json(entries, ids));
        notekg::Lexicon lexicon = notekg::Lexicon::load(path);

        for (int s = 0; s < 3; ++s) {
            // Random token stream seeded with real phrases so matches occur.
            Tokens tokens;
            int len = rand_int(3, 14);
            while (static_cast<int>(tokens.size()) < len) {
                if (rand_int(0, 2) == 0) {
                    const auto& e = entries[static_cast<std::size_t>(
                        rand_int(0, static_cast<int>(entries.size()) - 1))];
                    tokens.insert(tokens.end(), e.phrase.begin(), e.phrase.end());
                } else {
                    tokens.push_back(word_pool[static_cast<std::size_t>(
                        rand_int(0, static_cast<int>(word_pool.size()) - 1))]);
                }
            }
            tokens.resize(static_cast<std::size_t>(len));

            auto expected = lexdetail::brute_force_scan(tokens, entries);
            auto actual = lexicon.scan_all_matches(tokens);

            ASSERT_EQ(expected.size(), actual.size())
                << "scan size mismatch on: " << notekg::join(tokens);
            for (std::size_t m = 0; m < actual.size(); ++m) {
                const auto& [b, e, cid, via] = expected[m];
                EXPECT_EQ(actual[m].begin, b) << notekg::join(tokens);
                EXPECT_EQ(actual[m].end, e) << notekg::join(tokens);
                EXPECT_EQ(lexicon.facts()[actual[m].fact_index].concept_id, cid)
                    << notekg::join(tokens);
                EXPECT_EQ(actual[m].via, via) << notekg::join(tokens);
            }
            // Span disjointness + order, independent of the oracle.
            for (std::size_t m = 1; m < actual.size(); ++m)
                EXPECT_LE(actual[m - 1].end, actual[m].begin);
            ++cases;
        }
    }
    return cases;
}

// ===========================================================================
// 2. Parser vs grammar-rule enumeration (sentences up to 12 tokens)
// ===========================================================================

namespace parsedetail {

using notekg::ParseNode;
using notekg::detail::Unit;
namespace tags = notekg::tags;

/// Exhaustive derivation enumerator over the declared productions. Explores
/// every alternative (unlike the committed single-pass parser) and collects
/// complete parse trees; `limit` caps pathological ambiguity.
class Enumerator {
public:
    Enumerator(const Tokens& tokens, const notekg::Lexicon& lexicon)
        : toks_(tokens), units_(notekg::detail::make_units(tokens, lexicon)) {}

    std::vector<ParseNode> all_parses(std::size_t limit = 4096) {
        limit_ = limit;
        std::vector<ParseNode> out;
        if (units_.size() < 2) return out;
        if (!word_is(0, tags::DT) || toks_[units_[0].begin] != "the") return out;
        if (units_[1].is_concept() || toks_[units_[1].begin] != "patient") return out;
        ParseNode subject = ParseNode::internal(tags::NP);
        subject.children.push_back(ParseNode::leaf(tags::DT, "the"));
        subject.children.push_back(ParseNode::leaf(units_[1].tag, "patient"));
        for (auto& [end, vp] : derive_vp(2)) {
            if (end != units_.size()) continue;
            ParseNode s = ParseNode::internal(tags::S);
            s.children.push_back(subject);
            s.children.push_back(std::move(vp));
            out.push_back(std::move(s));
            if (out.size() >= limit_) break;
        }
        return out;
    }

private:
    const Tokens& toks_;
    std::vector<Unit> units_;
    std::size_t limit_ = 4096;

    using Alt = std::pair<std::size_t, ParseNode>;
    using AltSeq = std::pair<std::size_t, std::vector<ParseNode>>;

    bool word_is(std::size_t i, const char* tag) const {
        return i < units_.size() && !units_[i].is_concept() && units_[i].tag == tag;
    }
    bool noun_atom_at(std::size_t i) const {
        if (i >= units_.size()) return false;
        if (units_[i].is_concept()) return units_[i].match->via == notekg::MatchVia::Noun;
        return units_[i].tag == tags::NN || units_[i].tag == tags::NNS;
    }
    bool adj_concept_at(std::size_t i) const {
        return i < units_.size() && units_[i].is_concept() &&
               units_[i].match->via == notekg::MatchVia::Adjective;
    }
    ParseNode word_leaf(std::size_t i) const {
        return ParseNode::leaf(units_[i].tag, toks_[units_[i].begin]);
    }
    void append_unit(ParseNode& parent, std::size_t i) const {
        const Unit& u = units_[i];
        if (!u.is_concept()) {
            parent.children.push_back(word_leaf(i));
            return;
        }
        const char* tag = u.match->via == notekg::MatchVia::Noun ? tags::NN : tags::JJ;
        for (std::size_t t = u.begin; t < u.end; ++t)
            parent.children.push_back(ParseNode::leaf(tag, toks_[t]));
    }
    bool single_gerund_at(std::size_t i) const {
        if (i >= units_.size()) return false;
        const Unit& u = units_[i];
        return u.end == u.begin + 1 && notekg::words::looks_like_gerund(toks_[u.begin]);
    }
    /// Time chunk usable as an ADVP: starts on a word unit, does not start
    /// with a preposition cue, and does not cut into a concept unit.
    std::optional<std::size_t> cueless_chunk_units(std::size_t i) const {
        if (i >= units_.size() || units_[i].is_concept()) return std::nullopt;
        auto chunk = notekg::words::duration_chunk_at(toks_, units_[i].begin);
        if (!chunk) return std::nullopt;
        if (notekg::words::prepositions().count(toks_[units_[i].begin])) return std::nullopt;
        std::size_t u = i;
        for (; u < units_.size(); ++u) {
            if (units_[u].begin >= chunk->end) break;
            if (units_[u].is_concept()) return std::nullopt;
            if (units_[u].end > chunk->end) return std::nullopt;
        }
        return u;  // one past the last unit in the chunk
    }

    // VERBSEQ -> MD NEG? VB? | VBZ (NEG VB? | VBD)? | VBD | VB
    std::vector<AltSeq> derive_verbseq(std::size_t i) const {
        std::vector<AltSeq> out;
        auto push = [&](std::size_t end, std::vector<std::size_t> parts) {
            std::vector<ParseNode> leaves;
            for (std::size_t p : parts) leaves.push_back(word_leaf(p));
            out.emplace_back(end, std::move(leaves));
        };
        if (word_is(i, tags::MD)) {
            push(i + 1, {i});
            if (word_is(i + 1, tags::NEG)) {
                push(i + 2, {i, i + 1});
                if (word_is(i + 2, tags::VB)) push(i + 3, {i, i + 1, i + 2});
            }
            if (word_is(i + 1, tags::VB)) push(i + 2, {i, i + 1});
        }
        if (word_is(i, tags::VBZ)) {
            push(i + 1, {i});
            if (word_is(i + 1, tags::NEG)) {
                push(i + 2, {i, i + 1});
                if (word_is(i + 2, tags::VB)) push(i + 3, {i, i + 1, i + 2});
            }
            if (word_is(i + 1, tags::VBD)) push(i + 2, {i, i + 1});
        }
        if (word_is(i, tags::VBD)) push(i + 1, {i});
        if (word_is(i, tags::VB)) push(i + 1, {i});
        return out;
    }

    // NP -> DT? (JJ|RB)* NCORE ; NCORE -> CD+ | CD* (NN|NNS|noun-concept)+
    std::vector<Alt> derive_np(std::size_t i) const {
        std::vector<Alt> out;
        std::vector<std::pair<std::size_t, bool>> starts = {{i, false}};
        if (word_is(i, tags::DT)) starts.emplace_back(i + 1, true);
        for (auto [after_dt, with_dt] : starts) {
            // All modifier runs (each prefix of the maximal run).
            std::size_t m = after_dt;
            std::vector<std::size_t> mod_ends = {m};
            while (word_is(m, tags::JJ) || word_is(m, tags::RB) || adj_concept_at(m)) {
                ++m;
                mod_ends.push_back(m);
            }
            for (std::size_t mods_end : mod_ends) {
                // CD run prefixes.
                std::size_t c = mods_end;
                std::vector<std::size_t> cd_ends = {c};
                while (word_is(c, tags::CD)) {
                    ++c;
                    cd_ends.push_back(c);
                }
                for (std::size_t cd_end : cd_ends) {
                    // Atom run prefixes (at least one atom, or pure CD+).
                    std::size_t a = cd_end;
                    std::vector<std::size_t> atom_ends;
                    while (noun_atom_at(a)) {
                        ++a;
                        atom_ends.push_back(a);
                    }
                    std::vector<std::size_t> ends;
                    if (cd_end > mods_end) ends.push_back(cd_end);  // CD+ core
                    for (std::size_t ae : atom_ends) ends.push_back(ae);
                    for (std::size_t end : ends) {
                        ParseNode np = ParseNode::internal(tags::NP);
                        if (with_dt) np.children.push_back(word_leaf(after_dt - 1));
                        for (std::size_t p = after_dt; p < end; ++p) append_unit(np, p);
                        out.emplace_back(end, std::move(np));
                    }
                }
            }
        }
        return out;
    }

    // ADJP -> (JJ|RB)* JJ-head (head: JJ word or adjective concept).
    std::vector<Alt> derive_adjp(std::size_t i) const {
        std::vector<Alt> out;
        std::size_t m = i;
        while (word_is(m, tags::JJ) || word_is(m, tags::RB) || adj_concept_at(m)) {
            ++m;
            if (word_is(m - 1, tags::RB)) continue;  // head must be adjectival
            ParseNode adjp = ParseNode::internal(tags::ADJP);
            for (std::size_t p = i; p < m; ++p) append_unit(adjp, p);
            out.emplace_back(m, std::move(adjp));
        }
        return out;
    }

    // COMP -> VBG | CC-LIST | NP | ADJP | (empty) ; CC-LIST -> NP (CC NP)+
    std::vector<std::pair<std::size_t, std::optional<ParseNode>>> derive_comp(
        std::size_t i) const {
        std::vector<std::pair<std::size_t, std::optional<ParseNode>>> out;
        if (single_gerund_at(i))
            out.emplace_back(i + 1, ParseNode::leaf(tags::VBG, toks_[units_[i].begin]));
        for (auto& [end, np] : derive_np(i)) {
            // Plain NP complement.
            out.emplace_back(end, np);
            // List extensions: NP (CC NP)+, every member length explored.
            ParseNode seed = ParseNode::internal(tags::CCLIST);
            seed.children.push_back(np);
            extend_list(seed, end, out);
        }
        for (auto& [end, adjp] : derive_adjp(i)) out.emplace_back(end, adjp);
        out.emplace_back(i, std::nullopt);
        return out;
    }

    /// Appends every "CC NP" extension of `list` (which already holds ≥1
    /// member); lists with ≥2 members are emitted as derivations.
    void extend_list(const ParseNode& list, std::size_t pos,
                     std::vector<std::pair<std::size_t, std::optional<ParseNode>>>& out) const {
        if (out.size() >= limit_ || !word_is(pos, tags::CC)) return;
        for (auto& [mend, mnp] : derive_np(pos + 1)) {
            ParseNode ext = list;
            ext.children.push_back(word_leaf(pos));
            ext.children.push_back(mnp);
            out.emplace_back(mend, ext);
            extend_list(ext, mend, out);
            if (out.size() >= limit_) return;
        }
    }

    // TRAIL -> PP | ADVP ; PP -> IN NP ; ADVP -> RB | cue-less time chunk
    void derive_trailers(std::size_t i, std::vector<ParseNode>& acc,
                         std::vector<AltSeq>& out) const {
        out.emplace_back(i, acc);
        if (out.size() >= limit_) return;
        if (word_is(i, tags::IN)) {
            for (auto& [end, np] : derive_np(i + 1)) {
                ParseNode pp = ParseNode::internal(tags::PP);
                pp.children.push_back(word_leaf(i));
                pp.children.push_back(np);
                acc.push_back(std::move(pp));
                derive_trailers(end, acc, out);
                acc.pop_back();
            }
        }
        if (auto chunk_end = cueless_chunk_units(i)) {
            ParseNode advp = ParseNode::internal(tags::ADVP);
            for (std::size_t p = i; p < *chunk_end; ++p) advp.children.push_back(word_leaf(p));
            acc.push_back(std::move(advp));
            derive_trailers(*chunk_end, acc, out);
            acc.pop_back();
        }
        if (word_is(i, tags::RB)) {
            ParseNode advp = ParseNode::internal(tags::ADVP);
            advp.children.push_back(word_leaf(i));
            acc.push_back(std::move(advp));
            derive_trailers(i + 1, acc, out);
            acc.pop_back();
        }
    }

    std::vector<Alt> derive_vp(std::size_t i) const {
        std::vector<Alt> out;
        for (auto& [v_end, verbs] : derive_verbseq(i)) {
            for (auto& [c_end, comp] : derive_comp(v_end)) {
                std::vector<ParseNode> acc;
                std::vector<AltSeq> tails;
                derive_trailers(c_end, acc, tails);
                for (auto& [t_end, trailers] : tails) {
                    ParseNode vp = ParseNode::internal(tags::VP);
                    for (const auto& v : verbs) vp.children.push_back(v);
                    if (comp) vp.children.push_back(*comp);
                    for (const auto& t : trailers) vp.children.push_back(t);
                    out.emplace_back(t_end, std::move(vp));
                    if (out.size() >= limit_) return out;
                }
            }
        }
        return out;
    }
};

/// Random sentence generator: grammar-shaped drafts plus shuffles and token
/// soup, all capped at 12 tokens.
inline Tokens random_sentence(std::mt19937& rng) {
    auto pick = [&rng](const std::vector<std::string>& pool) {
        return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    };
    auto chance = [&rng](int pct) {
        return std::uniform_int_distribution<int>(0, 99)(rng) < pct;
    };

    static const std::vector<std::string> verbs = {"has", "is", "had", "was", "have"};
    static const std::vector<std::string> concepts = {
        "headache", "fever",  "cough",    "chest pain", "shortness of breath",
        "wheeze",   "nausea", "vomiting", "sore throat", "rash"};
    static const std::vector<std::string> adjectives = {"severe", "mild",  "slight",
                                                        "feverish", "dizzy", "breathless"};
    static const std::vector<std::string> adverbs = {"very", "quite", "really", "still"};
    static const std::vector<std::string> nouns = {"effort", "review", "gp", "sleep"};
    static const std::vector<std::string> trailers = {
        "for three days", "for a week",   "since yesterday", "two days ago",
        "on minimal effort", "in the morning", "again",       "for 2 weeks"};

    Tokens toks = {"the", "patient"};
    std::string verb = pick(verbs);
    toks.push_back(verb);
    if (verb == "has" && chance(15)) toks.push_back("had");
    if (chance(20)) {
        toks.insert(toks.end() - (toks.back() == "had" ? 2 : 1), "does");
        // keep it simple: rebuild as "does not have"
        toks = {"the", "patient", "does", "not", "have"};
    }

    int comp_kind = std::uniform_int_distribution<int>(0, 5)(rng);
    auto push_phrase = [&](const std::string& phrase) {
        for (const auto& w : notekg::split_ws(phrase)) toks.push_back(w);
    };
    switch (comp_kind) {
        case 0: break;  // empty complement
        case 1:
            if (chance(40)) toks.push_back(pick(adverbs));
            toks.push_back(pick(adjectives));
            break;
        case 2:
            if (chance(40)) toks.push_back("a");
            if (chance(50)) toks.push_back(pick(adjectives));
            push_phrase(pick(concepts));
            break;
        case 3:
            push_phrase(pick(concepts));
            toks.push_back(chance(50) ? "and" : "or");
            push_phrase(pick(concepts));
            break;
        case 4:
            toks.push_back(pick(nouns));
            break;
        default:
            toks.push_back("coughing");
            break;
    }
    if (chance(55)) push_phrase(pick(trailers));
    if (toks.size() > 12) toks.resize(12);

    int mode = std::uniform_int_distribution<int>(0, 99)(rng);
    if (mode < 25) {
        std::shuffle(toks.begin(), toks.end(), rng);
    } else if (mode < 35) {
        // Token soup.
        Tokens soup;
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 9)(rng);
        std::vector<std::string> all;
        all.insert(all.end(), verbs.begin(), verbs.end());
        all.insert(all.end(), adjectives.begin(), adjectives.end());
        all.insert(all.end(), nouns.begin(), nouns.end());
        all.push_back("the");
        all.push_back("and");
        all.push_back("for");
        all.push_back("not");
        for (std::size_t k = 0; k < n; ++k) soup.push_back(pick(all));
        if (chance(50)) {
            soup.insert(soup.begin(), "patient");
            soup.insert(soup.begin(), "the");
        }
        toks = soup;
        if (toks.size() > 12) toks.resize(12);
    }
    return toks;
}

}  // namespace parsedetail

inline std::size_t run_parser_oracle_suite() {
    const notekg::Lexicon& lexicon = testutil::shared_resources().lexicon;
    std::mt19937 rng(20240812);
    std::size_t cases = 0;
    std::size_t parsed = 0, unique_agree = 0;

    for (int iter = 0; iter < 320; ++iter) {
        Tokens toks = parsedetail::random_sentence(rng);
        if (toks.empty() || toks.size() > 12) continue;

        notekg::ExpandedSentence sentence;
        sentence.tokens = toks;
        sentence.pattern = notekg::Pattern::AlreadyComplete;

        bool ok = false;
        notekg::ParseTree tree;
        try {
            tree = notekg::parse_sentence(sentence, lexicon);
            ok = true;
        } catch (const notekg::ParseFailure&) {
        }

        parsedetail::Enumerator oracle(toks, lexicon);
        std::vector<notekg::ParseNode> derivations = oracle.all_parses();

        if (derivations.empty()) {
            // No derivation under the grammar rules: the parser must fail.
            EXPECT_FALSE(ok) << "parser accepted underivable sentence: "
                             << notekg::join(toks) << "\n"
                             << (ok ? notekg::dump_tree(tree.root) : "");
        }
        if (ok) {
            ++parsed;
            // Soundness: the committed parse is one of the rule derivations.
            bool member = false;
            for (const auto& d : derivations)
                if (notekg::same_structure(tree.root, d)) member = true;
            EXPECT_TRUE(member) << "parser tree not derivable from the grammar rules: "
                                << notekg::join(toks) << "\n"
                                << notekg::dump_tree(tree.root);
            EXPECT_EQ(tree.root.yield(), toks) << "yield not preserved";
            if (derivations.size() == 1) {
                ++unique_agree;
                EXPECT_TRUE(notekg::same_structure(tree.root, derivations[0]));
            }
            // Determinism.
            notekg::ParseTree again = notekg::parse_sentence(sentence, lexicon);
            EXPECT_TRUE(notekg::same_structure(tree.root, again.root));
        }
        ++cases;
    }
    // The generator must actually exercise both outcomes.
    EXPECT_GE(parsed, std::size_t{80});
    EXPECT_GE(cases - parsed, std::size_t{40});
    EXPECT_GE(unique_agree, std::size_t{50});
    return cases;
}

// ===========================================================================
// 3. Augmentation: token conservation and reversible hiding
// ===========================================================================

namespace augdetail {

inline std::multiset<std::string> bag(const Tokens& toks) {
    return {toks.begin(), toks.end()};
}

inline std::size_t count_label(const notekg::ParseNode& node, const std::string& label) {
    std::size_t n = node.label == label ? 1 : 0;
    for (const auto& c : node.children) n += count_label(c, label);
    return n;
}

/// Runs the conservation/reversibility checks for one parsed sentence.
inline void check_tree(const notekg::ParseTree& ptree, const notekg::Lexicon& lexicon,
                       const std::string& context) {
    notekg::InternalTree pre = notekg::generate_semantic_nodes(ptree, lexicon);
    notekg::InternalTree post = notekg::detect_attachments(pre, lexicon);

    // Token conservation: visible yield plus hidden attachment tokens is
    // exactly the parsed sentence, as a multiset.
    Tokens visible = post.root.yield();
    Tokens hidden;
    for (const auto& att : post.attachments)
        hidden.insert(hidden.end(), att.tokens.begin(), att.tokens.end());
    Tokens combined = visible;
    combined.insert(combined.end(), hidden.begin(), hidden.end());
    EXPECT_EQ(bag(combined), bag(ptree.root.yield())) << context;

    // Hiding is reversible: unhiding restores the pre-detection tree.
    notekg::ParseNode restored = notekg::unhide_attachments(post);
    EXPECT_TRUE(notekg::same_structure(restored, pre.root))
        << context << "\nrestored: " << notekg::dump_tree(restored)
        << "\nexpected: " << notekg::dump_tree(pre.root);

    // Exactly one patient entity.
    EXPECT_EQ(augdetail::count_label(post.root, notekg::tags::PATIENT), 1u) << context;

    // Anchors refer to real symptoms.
    for (const auto& att : post.attachments)
        if (att.anchor.kind == notekg::AnchorRef::Kind::Symptom)
            EXPECT_LT(att.anchor.symptom_index, post.symptoms.size()) << context;
}

}  // namespace augdetail

inline std::size_t run_augment_invariant_suite() {
    const notekg::Resources& res = testutil::shared_resources();
    std::size_t cases = 0;

    // Every parseable sentence of every corpus note.
    for (const auto& note : testutil::corpus_notes()) {
        std::vector<notekg::ExpandedSentence> sentences;
        try {
            sentences = notekg::preprocess_note(note, res.lexicon, &res.vocabulary);
        } catch (const notekg::EmptyNote&) {
            continue;
        }
        for (const auto& s : sentences) {
            if (s.pattern == notekg::Pattern::Unexpandable) continue;
            notekg::ParseTree tree;
            try {
                tree = notekg::parse_sentence(s, res.lexicon);
            } catch (const notekg::ParseFailure&) {
                continue;
            }
            augdetail::check_tree(tree, res.lexicon, note.note_id + ": " + notekg::join(s.tokens));
            ++cases;
        }
    }

    // Random grammar-shaped sentences on top.
    std::mt19937 rng(20240813);
    for (int iter = 0; iter < 400 && cases < 450; ++iter) {
        Tokens toks = parsedetail::random_sentence(rng);
        if (toks.empty() || toks.size() > 12) continue;
        notekg::ExpandedSentence s;
        s.tokens = toks;
        s.pattern = notekg::Pattern::AlreadyComplete;
        notekg::ParseTree tree;
        try {
            tree = notekg::parse_sentence(s, res.lexicon);
        } catch (const notekg::ParseFailure&) {
            continue;
        }
        augdetail::check_tree(tree, res.lexicon, notekg::join(toks));
        ++cases;
    }
    return cases;
}

// ===========================================================================
// 4. Graph extraction: determinism and schema validity
// ===========================================================================

inline std::size_t run_kg_determinism_suite() {
    const notekg::Resources& res = testutil::shared_resources();
    std::size_t cases = 0;

    auto check_note = [&](const notekg::RawNote& note) {
        std::optional<notekg::KnowledgeGraph> g1, g2;
        std::string err1, err2;
        try {
            g1 = notekg::extract_note_graph(note, res.lexicon, &res.vocabulary);
        } catch (const notekg::Error& e) {
            err1 = e.what();
        }
        try {
            g2 = notekg::extract_note_graph(note, res.lexicon, &res.vocabulary);
        } catch (const notekg::Error& e) {
            err2 = e.what();
        }
        EXPECT_EQ(g1.has_value(), g2.has_value()) << note.note_id;
        EXPECT_EQ(err1, err2) << note.note_id;
        if (g1 && g2) {
            EXPECT_EQ(notekg::graph_to_string(*g1), notekg::graph_to_string(*g2))
                << note.note_id;
            EXPECT_NO_THROW(notekg::validate_graph(*g1)) << note.note_id;
        }
        ++cases;
    };

    for (const auto& note : testutil::corpus_notes()) check_note(note);

    const auto& notes = testutil::corpus_notes();
    for (int i = 0; i < 150; ++i) {
        const notekg::RawNote& base = notes[static_cast<std::size_t>(i) % notes.size()];
        notekg::NoiseSpec spec;
        spec.typo_rate = (i % 3 == 0) ? 0.0 : 0.2;
        spec.abbreviation_rate = (i % 2 == 0) ? 0.5 : 0.0;
        spec.subject_drop = (i % 4 == 0);
        spec.seed = 7000u + static_cast<unsigned>(i);
        notekg::RawNote noisy = notekg::inject_noise(base, spec, res.lexicon);
        noisy.note_id = base.note_id + "+n" + std::to_string(i);
        check_note(noisy);
    }
    return cases;
}

// ===========================================================================
// 5. Symbolic solver vs brute-force least model (≤ 20 atoms)
// ===========================================================================

namespace solvedetail {

using notekg::HornRule;
using notekg::Literal;
using notekg::Predicate;

/// All ground atoms a program could ever derive: its facts plus every
/// constant instantiation of every rule head. A syntactic over-approximation
/// of the derivable set, independent of any chaining.
inline std::vector<Literal> atom_universe(const notekg::SymbolicProgram& program,
                                          const std::vector<std::string>& constants) {
    std::set<Literal> universe = program.facts;
    for (const auto& rule : program.rules) {
        bool has_var = false;
        for (const auto& a : rule.head.args) has_var |= notekg::is_variable(a);
        if (!has_var) {
            universe.insert(rule.head);
            continue;
        }
        for (const auto& c : constants) {
            Literal ground = rule.head;
            for (auto& a : ground.args)
                if (notekg::is_variable(a)) a = c;
            universe.insert(ground);
        }
    }
    return {universe.begin(), universe.end()};
}

/// Least model by brute force: enumerate every subset of the atom universe,
/// keep the ones that contain the facts and are closed under every ground
/// rule instance, and intersect them.
inline std::set<Literal> brute_force_least_model(const notekg::SymbolicProgram& program,
                                                 const std::vector<std::string>& constants) {
    std::vector<Literal> universe = atom_universe(program, constants);
    std::size_t n = universe.size();
    EXPECT_LE(n, std::size_t{20}) << "universe too large for enumeration";
    if (n > 20) return {};

    // Pre-ground all rules.
    std::vector<std::pair<std::vector<Literal>, Literal>> ground_rules;
    for (const auto& rule : program.rules) {
        bool has_var = false;
        for (const auto& a : rule.head.args) has_var |= notekg::is_variable(a);
        for (const auto& b : rule.body)
            for (const auto& a : b.args) has_var |= notekg::is_variable(a);
        auto instantiate = [&](const std::string& c) {
            std::vector<Literal> body = rule.body;
            Literal head = rule.head;
            for (auto& l : body)
                for (auto& a : l.args)
                    if (notekg::is_variable(a)) a = c;
            for (auto& a : head.args)
                if (notekg::is_variable(a)) a = c;
            ground_rules.emplace_back(std::move(body), std::move(head));
        };
        if (!has_var)
            ground_rules.emplace_back(rule.body, rule.head);
        else
            for (const auto& c : constants) instantiate(c);
    }

    std::set<Literal> intersection;
    bool first_model = true;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::set<Literal> m;
        for (std::size_t b = 0; b < n; ++b)
            if (mask & (1u << b)) m.insert(universe[b]);
        bool is_model = std::includes(m.begin(), m.end(), program.facts.begin(),
                                      program.facts.end());
        for (const auto& [body, head] : ground_rules) {
            if (!is_model) break;
            bool body_holds = true;
            for (const auto& l : body) body_holds &= m.count(l) > 0;
            if (body_holds && !m.count(head)) is_model = false;
        }
        if (!is_model) continue;
        if (first_model) {
            intersection = m;
            first_model = false;
        } else {
            std::set<Literal> next;
            std::set_intersection(intersection.begin(), intersection.end(), m.begin(), m.end(),
                                  std::inserter(next, next.begin()));
            intersection = std::move(next);
        }
    }
    EXPECT_FALSE(first_model) << "no model found (universe itself should be one)";
    return intersection;
}

}  // namespace solvedetail

inline std::size_t run_solver_oracle_suite() {
    using notekg::Literal;
    using notekg::Predicate;
    std::mt19937 rng(20240814);
    const std::vector<std::string> constants = {"p", "q", "r"};
    const std::vector<Predicate> preds = {Predicate::HasSymptom, Predicate::Severity,
                                          Predicate::Duration};
    auto rand_int = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    auto rand_const = [&]() {
        return constants[static_cast<std::size_t>(rand_int(0, 2))];
    };
    auto rand_pred = [&]() { return preds[static_cast<std::size_t>(rand_int(0, 2))]; };
    auto rand_arg = [&](bool allow_var) {
        if (allow_var && rand_int(0, 2) == 0) return std::string("X");
        return rand_const();
    };

    std::size_t cases = 0;
    for (int iter = 0; iter < 240; ++iter) {
        notekg::SymbolicProgram program;
        int n_facts = rand_int(1, 6);
        for (int f = 0; f < n_facts; ++f)
            program.facts.insert({rand_pred(), {rand_const(), rand_const()}});

        int n_rules = rand_int(0, 4);
        for (int r = 0; r < n_rules; ++r) {
            notekg::HornRule rule;
            int n_body = rand_int(1, 2);
            bool body_has_var = false;
            for (int b = 0; b < n_body; ++b) {
                Literal l{rand_pred(), {rand_arg(true), rand_arg(true)}};
                for (const auto& a : l.args) body_has_var |= notekg::is_variable(a);
                rule.body.push_back(std::move(l));
            }
            // Safety: the head may use the variable only if the body binds it.
            rule.head = {rand_pred(), {rand_arg(body_has_var), rand_arg(body_has_var)}};
            program.rules.push_back(std::move(rule));
        }

        std::vector<Literal> universe = solvedetail::atom_universe(program, constants);
        if (universe.size() > 20) continue;  // keep enumeration exact

        // Random constraint over the universe.
        program.constraint.kind = rand_int(0, 1) == 0 ? notekg::Constraint::Kind::AnyOf
                                                       : notekg::Constraint::Kind::NoneOf;
        int n_lits = rand_int(1, 2);
        for (int l = 0; l < n_lits; ++l)
            program.constraint.literals.push_back(
                universe[static_cast<std::size_t>(rand_int(0, static_cast<int>(universe.size()) - 1))]);

        std::set<Literal> expected = solvedetail::brute_force_least_model(program, constants);
        notekg::SolveResult got = notekg::solve(program);

        EXPECT_EQ(got.derived, expected) << "least-model mismatch (iter " << iter << ")";

        bool any = false;
        for (const auto& l : program.constraint.literals) any |= expected.count(l) > 0;
        bool expect_sat =
            program.constraint.kind == notekg::Constraint::Kind::AnyOf ? any : !any;
        EXPECT_EQ(got.status == notekg::SolveResult::Status::Sat, expect_sat)
            << "status mismatch (iter " << iter << ")";
        ++cases;
    }
    return cases;
}

// ===========================================================================
// 6. Question answering: encode/solve agrees with the forward answerer
// ===========================================================================

/// Corpus graphs extracted once and shared between suites/tests.
inline const std::map<std::string, notekg::KnowledgeGraph>& corpus_graphs() {
    static const std::map<std::string, notekg::KnowledgeGraph> graphs = [] {
        const notekg::Resources& res = testutil::shared_resources();
        std::map<std::string, notekg::KnowledgeGraph> out;
        for (const auto& note : testutil::corpus_notes())
            out.emplace(note.note_id,
                        notekg::extract_note_graph(note, res.lexicon, &res.vocabulary));
        return out;
    }();
    return graphs;
}

inline const std::vector<notekg::Question>& corpus_questions() {
    static const std::vector<notekg::Question> qs =
        notekg::load_questions(testutil::data_file("questions.json"));
    return qs;
}

inline std::size_t run_qa_roundtrip_suite() {
    const notekg::Resources& res = testutil::shared_resources();
    std::size_t cases = 0;

    for (const auto& [note_id, graph] : corpus_graphs()) {
        std::set<notekg::Literal> facts = notekg::kg_to_facts(graph, res.lexicon);
        for (const auto& q : corpus_questions()) {
            std::vector<std::string> candidates =
                q.kind == notekg::Question::Kind::YesNo
                    ? std::vector<std::string>{"yes", "no"}
                    : q.classes;
            std::string forward = notekg::answer_question(graph, q, res.lexicon,
                                                          res.severity_map, res.onset_bins);
            int sat_count = 0;
            for (const auto& cand : candidates) {
                notekg::SymbolicProgram program = notekg::encode_question(
                    q, cand, res.lexicon, res.severity_map, res.onset_bins);
                program.facts = facts;
                notekg::SolveResult r = notekg::solve(program);
                bool sat = r.status == notekg::SolveResult::Status::Sat;
                if (sat) ++sat_count;
                EXPECT_EQ(sat, forward == cand)
                    << note_id << " Q" << q.id << " candidate '" << cand
                    << "' forward answer '" << forward << "'";
                ++cases;
            }
            // Exactly one candidate is consistent with the graph.
            EXPECT_EQ(sat_count, 1) << note_id << " Q" << q.id;
        }
    }
    return cases;
}

}  // namespace suites
