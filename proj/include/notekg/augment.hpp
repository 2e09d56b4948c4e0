#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "notekg/common.hpp"
#include "notekg/lexicon.hpp"
#include "notekg/parse_tree.hpp"
#include "notekg/parser.hpp"

namespace notekg {

enum class AttachKind { Severity, Duration, Generic };

inline std::string to_string(AttachKind k) {
    switch (k) {
        case AttachKind::Severity: return "severity";
        case AttachKind::Duration: return "duration";
        case AttachKind::Generic: return "generic";
    }
    return "?";
}

/// What an attachment modifies, by semantic identity rather than tree
/// position (positions change when attachments are hidden).
struct AnchorRef {
    enum class Kind { Symptom, List, Vp };
    Kind kind = Kind::Vp;
    std::size_t symptom_index = 0;  // valid iff kind == Symptom
};

struct Attachment {
    AttachKind kind = AttachKind::Generic;
    Tokens tokens;
    AnchorRef anchor;
    ParseNode subtree;                         // hidden constituent, verbatim
    std::vector<std::size_t> path;             // pre-hiding child-index path
    std::vector<std::size_t> symptom_indices;  // symptoms inside the subtree
};

/// One matched concept occurrence in the sentence.
struct SymptomRef {
    std::size_t fact_index = 0;
    Tokens tokens;
    Tokens pos;
    bool negated = false;
    bool in_list = false;
    bool visible = true;  // false once its span was hidden inside an attachment
    std::size_t token_begin = 0;
    std::size_t token_end = 0;
};

struct InternalTree {
    ParseNode root;
    std::vector<Attachment> attachments;
    std::vector<SymptomRef> symptoms;  // sentence order
    bool has_list = false;
    std::string connective;  // "and"/"or" when has_list
    std::string main_verb;
    bool copula = false;
    bool negated = false;
    std::size_t sentence_ref = 0;
};

namespace detail {

inline bool copula_word(const std::string& w) {
    return w == "is" || w == "was" || w == "are" || w == "am" || w == "be" || w == "been" ||
           w == "were";
}

inline ParseNode make_symptom_node(const Lexicon& lexicon, const FactMatch& match,
                                   std::vector<ParseNode> leaves, bool negated) {
    const SupportedFact& fact = lexicon.facts()[match.fact_index];
    ParseNode sym = ParseNode::internal(tags::SYMPTOM);
    Tokens toks, pos;
    for (auto& l : leaves) {
        toks.push_back(l.token);
        pos.push_back(l.label);
    }
    sym.children = std::move(leaves);
    sym.attributes["concept_id"] = fact.concept_id;
    sym.attributes["label"] = fact.label;
    sym.attributes["tokens"] = join(toks);
    sym.attributes["pos"] = join(pos);
    sym.attributes["negated"] = negated ? "1" : "0";
    return sym;
}

// Replaces matched leaf runs of a flat phrase (NP/ADJP children are all
// leaves at this point) with SYMPTOM nodes.
inline void substitute_phrase(ParseNode& phrase, const Lexicon& lexicon, bool negated) {
    Tokens yield;
    for (const auto& c : phrase.children) yield.push_back(c.token);
    auto matches = lexicon.scan_all_matches(yield);
    for (auto it = matches.rbegin(); it != matches.rend(); ++it) {
        std::vector<ParseNode> leaves(phrase.children.begin() + it->begin,
                                      phrase.children.begin() + it->end);
        ParseNode sym = make_symptom_node(lexicon, *it, std::move(leaves), negated);
        phrase.children.erase(phrase.children.begin() + it->begin,
                              phrase.children.begin() + it->end);
        phrase.children.insert(phrase.children.begin() + it->begin, std::move(sym));
    }
}

inline void substitute_walk(ParseNode& node, const Lexicon& lexicon, bool negated) {
    if (node.label == tags::NP || node.label == tags::ADJP) {
        substitute_phrase(node, lexicon, negated);
        return;
    }
    for (auto& child : node.children) {
        if (child.is_leaf()) {
            if (child.label == tags::VBG) {
                if (auto m = lexicon.match_longest({child.token}, 0)) {
                    ParseNode leaf = child;
                    child = make_symptom_node(lexicon, *m, {leaf}, negated);
                }
            }
            continue;
        }
        substitute_walk(child, lexicon, negated);
    }
}

// Turns the parser's CC-LIST (NPs interleaved with CC leaves) into the
// semantic LIST node: children are the member NPs; separators move into
// attributes so the yield is unchanged.
inline void convert_lists(ParseNode& node) {
    for (auto& child : node.children) convert_lists(child);
    if (node.label != tags::CCLIST) return;
    std::vector<ParseNode> members;
    Tokens separators;
    for (auto& child : node.children) {
        if (child.is_leaf() && child.label == tags::CC)
            separators.push_back(child.token);
        else
            members.push_back(std::move(child));
    }
    std::string connective = "and";
    for (const auto& s : separators)
        if (s != ",") connective = s;
    node.label = tags::LIST;
    node.children = std::move(members);
    node.attributes["separators"] = join(separators);
    node.attributes["connective"] = connective;
}

// Pre-order traversal with token positions that mirror append_yield
// (LIST separators occupy one position between members).
template <typename Fn>
inline std::size_t walk_positions(ParseNode& node, std::vector<std::size_t>& path,
                                  std::size_t start, bool in_list, Fn&& fn) {
    fn(node, path, start, in_list);
    if (node.is_leaf()) return 1;
    std::size_t pos = start;
    bool list = node.label == tags::LIST;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (list && i > 0) ++pos;  // separator slot
        path.push_back(i);
        pos += walk_positions(node.children[i], path, pos, in_list || list, fn);
        path.pop_back();
    }
    return pos - start;
}

template <typename Fn>
inline void walk_positions(ParseNode& root, Fn&& fn) {
    std::vector<std::size_t> path;
    walk_positions(root, path, 0, false, fn);
}

}  // namespace detail

/// Substitutes semantic nodes into a parse tree: the subject NP becomes a
/// PATIENT node, matched concept spans become SYMPTOM nodes, and
/// coordinated complements become LIST nodes.
inline InternalTree generate_semantic_nodes(const ParseTree& tree, const Lexicon& lexicon) {
    InternalTree out;
    out.root = tree.root;
    out.sentence_ref = tree.sentence_ref;
    ParseNode& s = out.root;
    if (s.label != tags::S || s.children.size() != 2 || s.children[0].label != tags::NP ||
        s.children[0].yield() != Tokens{"the", "patient"})
        throw NoPatientNode("sentence lacks a 'the patient' subject noun phrase");

    ParseNode patient = ParseNode::internal(tags::PATIENT);
    patient.children = std::move(s.children[0].children);
    patient.attributes["tokens"] = "the patient";
    s.children[0] = std::move(patient);

    ParseNode& vp = s.children[1];
    for (const auto& child : vp.children) {
        if (!child.is_leaf()) break;
        if (child.label == tags::NEG) {
            out.negated = true;
        } else if (child.label == tags::MD || child.label == tags::VBZ ||
                   child.label == tags::VBD || child.label == tags::VB) {
            if (out.main_verb.empty()) out.main_verb = child.token;
        } else {
            break;
        }
    }
    out.copula = detail::copula_word(out.main_verb);

    detail::convert_lists(vp);
    detail::substitute_walk(vp, lexicon, out.negated);

    detail::walk_positions(out.root, [&](ParseNode& node, const std::vector<std::size_t>&,
                                         std::size_t start, bool in_list) {
        if (node.label != tags::SYMPTOM) {
            if (node.label == tags::LIST) {
                out.has_list = true;
                out.connective = node.attr("connective");
            }
            return;
        }
        SymptomRef ref;
        ref.tokens = split_ws(node.attr("tokens"));
        ref.pos = split_ws(node.attr("pos"));
        ref.negated = node.attr("negated") == "1";
        ref.in_list = in_list;
        ref.token_begin = start;
        ref.token_end = start + ref.tokens.size();
        auto m = lexicon.match_longest(ref.tokens, 0);
        ref.fact_index = m ? m->fact_index : 0;
        out.symptoms.push_back(std::move(ref));
    });
    return out;
}

namespace detail {

struct Candidate {
    std::vector<std::size_t> path;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::optional<std::size_t> enclosing_symptom;  // SYMPTOM sibling in the same phrase
};

inline void collect_candidates(InternalTree& tree, std::vector<Candidate>& out) {
    walk_positions(tree.root, [&](ParseNode& node, const std::vector<std::size_t>& path,
                                  std::size_t start, bool) {
        if (node.is_leaf() || path.empty()) return;
        if (node.label == tags::PP || node.label == tags::ADVP) {
            // Whole-constituent candidate (found at VP level or inside a
            // member; nested phrases stay inside it verbatim).
            Candidate c;
            c.path = path;
            c.begin = start;
            c.end = start + node.yield().size();
            out.push_back(std::move(c));
            return;
        }
        if (node.label != tags::NP && node.label != tags::ADJP) return;
        // Identify the phrase's own (first) SYMPTOM child by span; modifier
        // siblings anchor to it.
        std::optional<std::size_t> phrase_symptom;
        std::size_t pos = start;
        for (const ParseNode& ch : node.children) {
            std::size_t width = ch.is_leaf() ? 1 : ch.yield().size();
            if (ch.label == tags::SYMPTOM && !phrase_symptom) {
                for (std::size_t si = 0; si < tree.symptoms.size(); ++si)
                    if (tree.symptoms[si].token_begin == pos) {
                        phrase_symptom = si;
                        break;
                    }
            }
            pos += width;
        }
        // ADJP head: the last adjectival child is the predicate core, not
        // an attachment.
        std::optional<std::size_t> head_index;
        if (node.label == tags::ADJP) {
            for (std::size_t i = node.children.size(); i-- > 0;) {
                const ParseNode& ch = node.children[i];
                if (ch.label == tags::SYMPTOM || ch.label == tags::JJ) {
                    head_index = i;
                    break;
                }
            }
        }
        pos = start;
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            const ParseNode& ch = node.children[i];
            std::size_t width = ch.is_leaf() ? 1 : ch.yield().size();
            bool modifier_leaf = ch.is_leaf() && (ch.label == tags::JJ || ch.label == tags::RB);
            if (modifier_leaf && (!head_index || *head_index != i)) {
                Candidate c;
                c.path = path;
                c.path.push_back(i);
                c.begin = pos;
                c.end = pos + 1;
                c.enclosing_symptom = phrase_symptom;
                out.push_back(std::move(c));
            }
            pos += width;
        }
    });
    // walk_positions visits in pre-order; PP/ADVP candidates returned from
    // the callback without descending is not possible there, so drop any
    // candidate nested inside another candidate (keep the outermost).
    std::vector<Candidate> filtered;
    auto inside = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        if (b.size() >= a.size()) return false;
        return std::equal(b.begin(), b.end(), a.begin());
    };
    for (const auto& c : out) {
        bool nested = false;
        for (const auto& other : out)
            if (&other != &c && inside(c.path, other.path)) nested = true;
        if (!nested) filtered.push_back(c);
    }
    out = std::move(filtered);
}

}  // namespace detail

/// Classifies, anchors, and hides attachment constituents. The hidden
/// subtree and its original path are kept so hiding is reversible.
inline InternalTree detect_attachments(InternalTree tree, const Lexicon& lexicon) {
    std::vector<detail::Candidate> candidates;
    detail::collect_candidates(tree, candidates);

    for (const auto& cand : candidates) {
        Attachment att;
        att.path = cand.path;
        att.subtree = tree.root.at(cand.path);
        att.tokens = att.subtree.yield();

        bool has_cd = false, has_unit = false, has_ago = false;
        for (const auto& t : att.tokens) {
            if (contains_digit(t) || words::is_number_word(t)) has_cd = true;
            if (words::is_time_unit(t)) has_unit = true;
            if (t == "ago") has_ago = true;
        }
        if (att.tokens.size() == 1 && lexicon.is_severity_cue(att.tokens[0]))
            att.kind = AttachKind::Severity;
        else if (lexicon.is_duration_cue_head(att.tokens.front()) || has_ago ||
                 (has_cd && has_unit))
            att.kind = AttachKind::Duration;
        else
            att.kind = AttachKind::Generic;

        // Symptoms hidden along with this constituent (e.g. "with fever").
        for (std::size_t si = 0; si < tree.symptoms.size(); ++si) {
            auto& sym = tree.symptoms[si];
            if (sym.token_begin >= cand.begin && sym.token_end <= cand.end) {
                att.symptom_indices.push_back(si);
                sym.visible = false;
            }
        }

        if (cand.enclosing_symptom) {
            att.anchor = {AnchorRef::Kind::Symptom, *cand.enclosing_symptom};
        } else {
            std::optional<std::size_t> preceding;
            for (std::size_t si = 0; si < tree.symptoms.size(); ++si) {
                const auto& sym = tree.symptoms[si];
                if (sym.token_end > cand.begin) continue;
                if (!preceding || sym.token_end > tree.symptoms[*preceding].token_end)
                    preceding = si;
            }
            if (preceding && tree.symptoms[*preceding].in_list)
                att.anchor = {AnchorRef::Kind::List, 0};
            else if (preceding)
                att.anchor = {AnchorRef::Kind::Symptom, *preceding};
            else
                att.anchor = {AnchorRef::Kind::Vp, 0};
        }
        tree.attachments.push_back(std::move(att));
    }

    // Hide back-to-front so earlier recorded paths stay valid.
    for (auto it = tree.attachments.rbegin(); it != tree.attachments.rend(); ++it) {
        std::vector<std::size_t> parent_path(it->path.begin(), it->path.end() - 1);
        ParseNode& parent = tree.root.at(parent_path);
        parent.children.erase(parent.children.begin() + it->path.back());
    }
    return tree;
}

/// Full augmentation: semantic nodes, then attachment hiding.
inline InternalTree augment_tree(const ParseTree& tree, const Lexicon& lexicon) {
    return detect_attachments(generate_semantic_nodes(tree, lexicon), lexicon);
}

/// Reinserts every hidden attachment at its recorded path; inverse of the
/// hiding step (used by the reversibility property test).
inline ParseNode unhide_attachments(const InternalTree& tree) {
    ParseNode root = tree.root;
    for (const auto& att : tree.attachments) {
        std::vector<std::size_t> parent_path(att.path.begin(), att.path.end() - 1);
        ParseNode& parent = root.at(parent_path);
        parent.children.insert(parent.children.begin() + att.path.back(), att.subtree);
    }
    return root;
}

/// Debug dump: bracketed visible tree plus an @attachments block.
inline std::string dump_internal_tree(const InternalTree& tree) {
    std::string out = dump_tree(tree.root);
    out += "\n@attachments";
    if (tree.attachments.empty()) out += " none";
    for (const auto& att : tree.attachments) {
        out += "\n  " + to_string(att.kind) + " \"" + join(att.tokens) + "\" -> ";
        switch (att.anchor.kind) {
            case AnchorRef::Kind::Symptom: {
                const auto& sym = tree.symptoms[att.anchor.symptom_index];
                out += "symptom:" + slug(join(sym.tokens));
                break;
            }
            case AnchorRef::Kind::List: out += "list"; break;
            case AnchorRef::Kind::Vp: out += "vp"; break;
        }
    }
    return out;
}

}  // namespace notekg
