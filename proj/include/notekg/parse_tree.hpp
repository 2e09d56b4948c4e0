#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "notekg/common.hpp"

namespace notekg {

// Constituent / POS labels for the restricted grammar, plus the semantic
// labels the augmentation stage substitutes in.
namespace tags {
inline constexpr const char* S = "S";
inline constexpr const char* NP = "NP";
inline constexpr const char* VP = "VP";
inline constexpr const char* PP = "PP";
inline constexpr const char* ADJP = "ADJP";
inline constexpr const char* ADVP = "ADVP";
inline constexpr const char* CCLIST = "CC-LIST";
inline constexpr const char* DT = "DT";
inline constexpr const char* NN = "NN";
inline constexpr const char* NNS = "NNS";
inline constexpr const char* JJ = "JJ";
inline constexpr const char* RB = "RB";
inline constexpr const char* VB = "VB";
inline constexpr const char* VBZ = "VBZ";
inline constexpr const char* VBD = "VBD";
inline constexpr const char* VBG = "VBG";
inline constexpr const char* MD = "MD";
inline constexpr const char* IN = "IN";
inline constexpr const char* CC = "CC";
inline constexpr const char* CD = "CD";
inline constexpr const char* NEG = "NEG";
// Semantic node labels (internal tree representation).
inline constexpr const char* PATIENT = "PATIENT";
inline constexpr const char* SYMPTOM = "SYMPTOM";
inline constexpr const char* LIST = "LIST";
}  // namespace tags

inline bool is_pos_tag(const std::string& label) {
    static const std::vector<std::string> pos = {
        tags::DT, tags::NN, tags::NNS, tags::JJ, tags::RB,  tags::VB, tags::VBZ,
        tags::VBD, tags::VBG, tags::MD, tags::IN, tags::CC, tags::CD, tags::NEG};
    for (const auto& p : pos)
        if (p == label) return true;
    return false;
}

/// A node of the (possibly augmented) constituency tree. Leaves carry the
/// original word token; internal nodes carry ordered children. The LIST
/// node stores its separators ("," / "and" / "or") in attributes so its
/// children stay pure noun phrases while the yield still reproduces every
/// token.
struct ParseNode {
    std::string label;
    std::vector<ParseNode> children;
    std::string token;  // nonempty iff leaf
    std::map<std::string, std::string> attributes;

    bool is_leaf() const { return !token.empty(); }

    static ParseNode leaf(std::string lbl, std::string tok) {
        ParseNode n;
        n.label = std::move(lbl);
        n.token = std::move(tok);
        return n;
    }
    static ParseNode internal(std::string lbl) {
        ParseNode n;
        n.label = std::move(lbl);
        return n;
    }

    void append_yield(Tokens& out) const {
        if (is_leaf()) {
            out.push_back(token);
            return;
        }
        if (label == tags::LIST) {
            Tokens seps = split_ws(attr("separators"));
            for (std::size_t i = 0; i < children.size(); ++i) {
                if (i > 0 && i - 1 < seps.size()) out.push_back(seps[i - 1]);
                children[i].append_yield(out);
            }
            return;
        }
        for (const auto& c : children) c.append_yield(out);
    }

    Tokens yield() const {
        Tokens out;
        append_yield(out);
        return out;
    }

    std::string attr(const std::string& key) const {
        auto it = attributes.find(key);
        return it == attributes.end() ? std::string() : it->second;
    }

    const ParseNode& at(const std::vector<std::size_t>& path) const {
        const ParseNode* n = this;
        for (std::size_t idx : path) n = &n->children.at(idx);
        return *n;
    }
    ParseNode& at(const std::vector<std::size_t>& path) {
        ParseNode* n = this;
        for (std::size_t idx : path) n = &n->children.at(idx);
        return *n;
    }
};

/// Bracketed debug form: "(S (NP (DT the) (NN patient)) ...)". Semantic
/// nodes show their concept label, e.g. "(SYMPTOM=headache (NN headache))".
inline std::string dump_tree(const ParseNode& node) {
    std::string out = "(" + node.label;
    if (node.label == tags::SYMPTOM && !node.attr("label").empty())
        out += "=" + slug(node.attr("label"));
    if (node.label == tags::LIST && !node.attr("connective").empty())
        out += "=" + node.attr("connective");
    if (node.is_leaf()) {
        out += " " + node.token + ")";
        return out;
    }
    for (const auto& c : node.children) out += " " + dump_tree(c);
    out += ")";
    return out;
}

struct ParseTree {
    ParseNode root;
    std::size_t sentence_ref = 0;
};

/// Structural equality over labels, tokens, and child order (attributes
/// excluded; they carry derived bookkeeping).
inline bool same_structure(const ParseNode& a, const ParseNode& b) {
    if (a.label != b.label || a.token != b.token) return false;
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!same_structure(a.children[i], b.children[i])) return false;
    return true;
}

}  // namespace notekg
