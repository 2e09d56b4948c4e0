#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "notekg/common.hpp"
#include "notekg/lexicon.hpp"
#include "notekg/parse_tree.hpp"
#include "notekg/preprocess.hpp"
#include "notekg/wordclass.hpp"

namespace notekg {

/// Deterministic table-driven tagging. `prev_tag` is the tag of the
/// previous non-NEG token ("" at sentence start); it only matters for the
/// bare-verb slot after a modal ("can talk").
inline std::string pos_tag(const std::string& token, const std::string& prev_tag,
                           const Lexicon& lexicon) {
    using namespace words;
    if (conjunctions().count(token)) return tags::CC;
    if (determiners().count(token)) return tags::DT;
    if (negators().count(token)) return tags::NEG;
    if (prepositions().count(token)) return tags::IN;
    if (modals().count(token)) return tags::MD;
    if (auto vf = verb_form(token)) {
        switch (*vf) {
            case VerbForm::Vbz: return tags::VBZ;
            case VerbForm::Vb: return tags::VB;
            case VerbForm::Vbd: return tags::VBD;
        }
    }
    if (contains_digit(token) || is_number_word(token)) return tags::CD;
    if (lexicon.is_severity_cue(token)) return tags::JJ;
    if (lexicon.is_adjective_support_word(token)) return tags::JJ;
    if (plain_adjectives().count(token)) return tags::JJ;
    if (looks_like_gerund(token)) return tags::VBG;
    if (adverbs().count(token)) return tags::RB;
    if (token.size() > 3 && token.ends_with("ly")) return tags::RB;
    if (prev_tag == tags::MD) return tags::VB;
    if (token.size() > 3 && token.ends_with('s') && !token.ends_with("ss")) {
        if (is_time_unit(token)) return tags::NNS;
        std::string singular = token.substr(0, token.size() - 1);
        if (lexicon.is_noun_support_token(singular) || is_time_unit(singular)) return tags::NNS;
    }
    return tags::NN;
}

namespace detail {

// The token stream pre-chunked into units: lexicon concept spans become
// atomic multi-token units so "shortness of breath" can never be split
// across constituents.
struct Unit {
    std::size_t begin = 0;
    std::size_t end = 0;  // token positions, half-open
    std::optional<FactMatch> match;
    std::string tag;  // word units only

    bool is_concept() const { return match.has_value(); }
};

inline std::vector<Unit> make_units(const Tokens& tokens, const Lexicon& lexicon) {
    std::vector<FactMatch> matches = lexicon.scan_all_matches(tokens);
    std::vector<Unit> units;
    std::size_t mi = 0;
    std::string prev_tag;
    for (std::size_t i = 0; i < tokens.size();) {
        if (mi < matches.size() && matches[mi].begin == i) {
            Unit u;
            u.begin = i;
            u.end = matches[mi].end;
            u.match = matches[mi];
            units.push_back(u);
            prev_tag = matches[mi].via == MatchVia::Noun ? tags::NN : tags::JJ;
            i = matches[mi].end;
            ++mi;
            continue;
        }
        Unit u;
        u.begin = i;
        u.end = i + 1;
        u.tag = pos_tag(tokens[i], prev_tag, lexicon);
        if (u.tag != tags::NEG) prev_tag = u.tag;
        units.push_back(u);
        ++i;
    }
    return units;
}

/// Recursive-descent derivation over the restricted grammar:
///
///   S       -> NP(the patient) VP
///   VP      -> VERBSEQ COMP TRAIL*
///   VERBSEQ -> MD NEG? VB? | VBZ (NEG VB? | VBD)? | VBD | VB
///   COMP    -> VBG | CC-LIST | NP | ADJP | (empty)
///   CC-LIST -> NP (CC NP)+
///   NP      -> DT? (JJ|RB)* NCORE
///   NCORE   -> CD+ | CD* (NN|NNS|noun-concept)+
///   ADJP    -> (JJ|RB)* JJ-head
///   TRAIL   -> PP | ADVP
///   PP      -> IN NP
///   ADVP    -> RB | cue-less time chunk ("two days ago")
///
/// Cue-led durations ("for three days") surface as PPs because IN wins the
/// trailer position; only cue-less chunks become ADVP trailers.
class SentenceParser {
public:
    SentenceParser(const Tokens& tokens, const Lexicon& lexicon)
        : tokens_(tokens), lexicon_(lexicon), units_(make_units(tokens, lexicon)) {}

    ParseNode parse() {
        ParseNode s = ParseNode::internal(tags::S);
        s.children.push_back(parse_subject());
        s.children.push_back(parse_vp());
        if (!done()) fail("unexpected token '" + word_at(pos_) + "'");
        return s;
    }

private:
    const Tokens& tokens_;
    const Lexicon& lexicon_;
    std::vector<Unit> units_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& reason) const {
        throw ParseFailure(reason + " in \"" + join(tokens_) + "\"");
    }
    bool done() const { return pos_ >= units_.size(); }
    const Unit& cur() const { return units_[pos_]; }
    bool cur_word(const char* tag) const {
        return !done() && !cur().is_concept() && cur().tag == tag;
    }
    std::string word_at(std::size_t upos) const {
        return upos < units_.size() ? tokens_[units_[upos].begin] : "<end>";
    }

    ParseNode take_word_leaf() {
        const Unit& u = units_[pos_++];
        return ParseNode::leaf(u.tag, tokens_[u.begin]);
    }

    // Concept units expand into one leaf per token: NN for noun supports,
    // JJ for adjective supports.
    void append_concept_leaves(ParseNode& parent) {
        const Unit& u = units_[pos_++];
        const char* tag = u.match->via == MatchVia::Noun ? tags::NN : tags::JJ;
        for (std::size_t i = u.begin; i < u.end; ++i)
            parent.children.push_back(ParseNode::leaf(tag, tokens_[i]));
    }

    bool at_noun_atom() const {
        if (done()) return false;
        if (cur().is_concept()) return cur().match->via == MatchVia::Noun;
        return cur().tag == tags::NN || cur().tag == tags::NNS;
    }

    bool chunk_here(words::DurationChunk* out = nullptr) const {
        if (done()) return false;
        auto chunk = words::duration_chunk_at(tokens_, cur().begin);
        if (!chunk) return false;
        // The chunk must not cut into a concept unit.
        for (std::size_t u = pos_; u < units_.size(); ++u) {
            if (units_[u].begin >= chunk->end) break;
            if (units_[u].is_concept()) return false;
            if (units_[u].end > chunk->end) return false;
        }
        if (out) *out = *chunk;
        return true;
    }

    ParseNode parse_subject() {
        if (!cur_word(tags::DT) || word_at(pos_) != "the") fail("expected 'the patient' subject");
        ParseNode np = ParseNode::internal(tags::NP);
        np.children.push_back(take_word_leaf());
        if (done() || cur().is_concept() || word_at(pos_) != "patient")
            fail("expected 'the patient' subject");
        np.children.push_back(take_word_leaf());
        return np;
    }

    ParseNode parse_vp() {
        ParseNode vp = ParseNode::internal(tags::VP);
        parse_verbseq(vp);
        parse_complement(vp);
        parse_trailers(vp);
        return vp;
    }

    void parse_verbseq(ParseNode& vp) {
        if (cur_word(tags::MD)) {
            vp.children.push_back(take_word_leaf());
            if (cur_word(tags::NEG)) vp.children.push_back(take_word_leaf());
            if (cur_word(tags::VB)) vp.children.push_back(take_word_leaf());
            return;
        }
        if (cur_word(tags::VBZ)) {
            vp.children.push_back(take_word_leaf());
            if (cur_word(tags::NEG)) {
                vp.children.push_back(take_word_leaf());
                if (cur_word(tags::VB)) vp.children.push_back(take_word_leaf());
            } else if (cur_word(tags::VBD)) {
                vp.children.push_back(take_word_leaf());  // "has had"
            }
            return;
        }
        if (cur_word(tags::VBD) || cur_word(tags::VB)) {
            vp.children.push_back(take_word_leaf());
            return;
        }
        fail("expected a verb, got '" + word_at(pos_) + "'");
    }

    bool single_token_gerund() const {
        if (done()) return false;
        std::size_t b = cur().begin;
        if (cur().end != b + 1) return false;
        return words::looks_like_gerund(tokens_[b]);
    }

    void parse_complement(ParseNode& vp) {
        if (done() || cur_word(tags::IN)) return;
        if (single_token_gerund()) {
            const Unit& u = cur();
            ++pos_;
            vp.children.push_back(ParseNode::leaf(tags::VBG, tokens_[u.begin]));
            return;
        }
        words::DurationChunk chunk;
        if (chunk_here(&chunk) && tokens_[chunk.end - 1] == "ago") return;  // trailer's
        auto first = parse_np_or_adjp();
        if (!first) return;
        if (first->label != tags::NP || !cur_word(tags::CC)) {
            vp.children.push_back(std::move(*first));
            return;
        }
        ParseNode list = ParseNode::internal(tags::CCLIST);
        list.children.push_back(std::move(*first));
        while (cur_word(tags::CC)) {
            list.children.push_back(take_word_leaf());
            auto member = parse_np_or_adjp();
            if (!member || member->label != tags::NP)
                fail("list connective must be followed by a noun phrase");
            list.children.push_back(std::move(*member));
        }
        vp.children.push_back(std::move(list));
    }

    // Complement-position phrase: NP when a noun core follows the
    // modifiers, ADJP when the span is purely adjectival. Returns nullopt
    // (with position restored) when neither applies, so adverbial trailers
    // get their chance.
    std::optional<ParseNode> parse_np_or_adjp() {
        std::size_t save = pos_;
        ParseNode node = ParseNode::internal(tags::NP);
        if (cur_word(tags::DT)) node.children.push_back(take_word_leaf());

        std::vector<std::size_t> mod_positions;
        while (!done()) {
            if (cur().is_concept() && cur().match->via == MatchVia::Adjective) {
                mod_positions.push_back(pos_++);
                continue;
            }
            if (cur_word(tags::JJ) || cur_word(tags::RB)) {
                mod_positions.push_back(pos_++);
                continue;
            }
            break;
        }

        if (at_noun_atom() || cur_word(tags::CD)) {
            std::size_t after_mods = pos_;
            pos_ = save + (node.children.empty() ? 0 : 1);
            while (pos_ < after_mods) {
                if (cur().is_concept())
                    append_concept_leaves(node);
                else
                    node.children.push_back(take_word_leaf());
            }
            while (cur_word(tags::CD)) node.children.push_back(take_word_leaf());
            while (at_noun_atom()) {
                if (cur().is_concept())
                    append_concept_leaves(node);
                else
                    node.children.push_back(take_word_leaf());
            }
            return node;
        }

        // No noun core: adjectival predicate if the last modifier is an
        // adjective, otherwise backtrack and let trailers take over.
        if (!mod_positions.empty() && node.children.empty()) {
            std::size_t last = mod_positions.back();
            if (units_[last].is_concept() || units_[last].tag == tags::JJ) {
                std::size_t end_pos = pos_;
                ParseNode adjp = ParseNode::internal(tags::ADJP);
                pos_ = save;
                while (pos_ < end_pos) {
                    if (cur().is_concept())
                        append_concept_leaves(adjp);
                    else
                        adjp.children.push_back(take_word_leaf());
                }
                return adjp;
            }
        }
        pos_ = save;
        if (!mod_positions.empty() || !node.children.empty()) return std::nullopt;
        if (done()) return std::nullopt;
        fail("cannot start a phrase at '" + word_at(pos_) + "'");
    }

    void parse_trailers(ParseNode& vp) {
        while (!done()) {
            if (cur_word(tags::IN)) {
                ParseNode pp = ParseNode::internal(tags::PP);
                pp.children.push_back(take_word_leaf());
                auto obj = parse_np_or_adjp();
                if (!obj || obj->label != tags::NP)
                    fail("preposition without a noun-phrase object");
                pp.children.push_back(std::move(*obj));
                vp.children.push_back(std::move(pp));
                continue;
            }
            words::DurationChunk chunk;
            if (chunk_here(&chunk)) {
                ParseNode advp = ParseNode::internal(tags::ADVP);
                while (!done() && cur().begin < chunk.end) advp.children.push_back(take_word_leaf());
                vp.children.push_back(std::move(advp));
                continue;
            }
            if (cur_word(tags::RB)) {
                ParseNode advp = ParseNode::internal(tags::ADVP);
                advp.children.push_back(take_word_leaf());
                vp.children.push_back(std::move(advp));
                continue;
            }
            fail("unexpected trailing token '" + word_at(pos_) + "'");
        }
    }
};

}  // namespace detail

/// Parses one expanded sentence; throws ParseFailure when the tokens fall
/// outside the restricted grammar (callers surface these as unparsed
/// segments, never drop them silently).
inline ParseTree parse_sentence(const ExpandedSentence& sentence, const Lexicon& lexicon,
                                std::size_t sentence_ref = 0) {
    if (sentence.pattern == Pattern::Unexpandable)
        throw ParseFailure("refusing to parse an unexpandable segment");
    detail::SentenceParser parser(sentence.tokens, lexicon);
    ParseTree tree;
    tree.root = parser.parse();
    tree.sentence_ref = sentence_ref;
    return tree;
}

}  // namespace notekg
