#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "notekg/augment.hpp"
#include "notekg/common.hpp"
#include "notekg/lexicon.hpp"
#include "notekg/parser.hpp"
#include "notekg/preprocess.hpp"

namespace notekg {

enum class NodeKind { Patient, Symptom, Severity, Duration, Other };

inline std::string to_string(NodeKind k) {
    switch (k) {
        case NodeKind::Patient: return "patient";
        case NodeKind::Symptom: return "symptom";
        case NodeKind::Severity: return "severity";
        case NodeKind::Duration: return "duration";
        case NodeKind::Other: return "other";
    }
    return "?";
}

inline NodeKind node_kind_from_string(const std::string& s) {
    if (s == "patient") return NodeKind::Patient;
    if (s == "symptom") return NodeKind::Symptom;
    if (s == "severity") return NodeKind::Severity;
    if (s == "duration") return NodeKind::Duration;
    if (s == "other") return NodeKind::Other;
    throw SchemaError("unknown node kind: " + s);
}

struct KGNode {
    std::string id;
    NodeKind kind = NodeKind::Other;
    std::string label;
    std::string concept_id;  // Symptom nodes only

    friend bool operator==(const KGNode&, const KGNode&) = default;
};

struct RelationType {
    enum class Kind { HasSymptom, DoesNotHaveSymptom, HasSeverity, HasDuration, Other };
    Kind kind = Kind::Other;
    std::string label;  // Other only: the relation word ("on", "is", ...)

    std::string serialized() const {
        switch (kind) {
            case Kind::HasSymptom: return "has_symptom";
            case Kind::DoesNotHaveSymptom: return "does_not_have_symptom";
            case Kind::HasSeverity: return "has_severity";
            case Kind::HasDuration: return "has_duration";
            case Kind::Other: return label;
        }
        return label;
    }

    static RelationType from_string(const std::string& s) {
        if (s == "has_symptom") return {Kind::HasSymptom, ""};
        if (s == "does_not_have_symptom") return {Kind::DoesNotHaveSymptom, ""};
        if (s == "has_severity") return {Kind::HasSeverity, ""};
        if (s == "has_duration") return {Kind::HasDuration, ""};
        return {Kind::Other, s};
    }

    friend bool operator==(const RelationType&, const RelationType&) = default;
    friend auto operator<=>(const RelationType&, const RelationType&) = default;
};

struct KGEdge {
    std::string src;
    std::string dst;
    RelationType relation;

    friend bool operator==(const KGEdge&, const KGEdge&) = default;
    friend auto operator<=>(const KGEdge&, const KGEdge&) = default;
};

struct KnowledgeGraph {
    std::string note_id;
    std::vector<KGNode> nodes;
    std::vector<KGEdge> edges;
    std::vector<std::string> unparsed_segments;
    std::vector<std::string> diagnostics;  // in-memory only, not serialized

    const KGNode* find_node(const std::string& id) const {
        for (const auto& n : nodes)
            if (n.id == id) return &n;
        return nullptr;
    }

    KGNode& ensure_node(KGNode node) {
        for (auto& n : nodes)
            if (n.id == node.id) return n;
        nodes.push_back(std::move(node));
        return nodes.back();
    }

    bool has_edge(const KGEdge& e) const {
        return std::find(edges.begin(), edges.end(), e) != edges.end();
    }

    void add_edge(KGEdge e) {
        if (!has_edge(e)) edges.push_back(std::move(e));
    }

    /// Sorts nodes by id and edges by (src, dst, relation) so serialized
    /// output is byte-stable.
    void canonicalize() {
        std::sort(nodes.begin(), nodes.end(),
                  [](const KGNode& a, const KGNode& b) { return a.id < b.id; });
        std::sort(edges.begin(), edges.end());
    }
};

inline std::string patient_node_id() { return "patient"; }
inline std::string symptom_node_id(const std::string& concept_id) { return "sym:" + concept_id; }
inline std::string severity_node_id(const std::string& label) { return "sev:" + slug(label); }
inline std::string duration_node_id(const std::string& label) { return "dur:" + slug(label); }
inline std::string other_node_id(const std::string& label) {
    return label.empty() ? "oth:nil" : "oth:" + slug(label);
}

/// Main subgraph for one sentence: Patient node, one Symptom node and
/// polarity edge per concept occurrence (list members individually), plus
/// a copula relation that the nuisance pass later deletes.
inline KnowledgeGraph extract_sentence_subgraph(const InternalTree& tree, const Lexicon& lexicon) {
    KnowledgeGraph frag;
    frag.ensure_node({patient_node_id(), NodeKind::Patient, "patient", ""});
    for (const auto& sym : tree.symptoms) {
        const SupportedFact& fact = lexicon.facts()[sym.fact_index];
        std::string id = symptom_node_id(fact.concept_id);
        frag.ensure_node({id, NodeKind::Symptom, fact.label, fact.concept_id});
        RelationType rel{sym.negated ? RelationType::Kind::DoesNotHaveSymptom
                                     : RelationType::Kind::HasSymptom,
                         ""};
        frag.add_edge({patient_node_id(), id, rel});
    }
    if (tree.copula && !tree.main_verb.empty()) {
        // Copula-expanded sentences carry an argument-less "to be" relation;
        // remove_nuisance_relations deletes it unless content attaches.
        frag.ensure_node({other_node_id(""), NodeKind::Other, "", ""});
        frag.add_edge({patient_node_id(), other_node_id(""),
                       {RelationType::Kind::Other, tree.main_verb}});
    }
    return frag;
}

namespace detail {

// Anchor symptom-node ids for an attachment; empty => anchor is the verb
// phrase itself (modelled as the Patient node).
inline std::vector<std::string> anchor_ids(const InternalTree& tree, const Attachment& att,
                                           const Lexicon& lexicon, const KnowledgeGraph& frag) {
    std::vector<std::string> ids;
    auto push_symptom = [&](std::size_t index) {
        const SupportedFact& fact = lexicon.facts()[tree.symptoms[index].fact_index];
        std::string id = symptom_node_id(fact.concept_id);
        if (!frag.find_node(id))
            throw DanglingAttachment("attachment anchor symptom missing from fragment: " +
                                     fact.label);
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    };
    switch (att.anchor.kind) {
        case AnchorRef::Kind::Symptom:
            if (att.anchor.symptom_index >= tree.symptoms.size())
                throw DanglingAttachment("attachment anchor index out of range");
            push_symptom(att.anchor.symptom_index);
            break;
        case AnchorRef::Kind::List:
            for (std::size_t i = 0; i < tree.symptoms.size(); ++i)
                if (tree.symptoms[i].in_list) push_symptom(i);
            if (ids.empty()) throw DanglingAttachment("list anchor with no member symptoms");
            break;
        case AnchorRef::Kind::Vp: break;
    }
    return ids;
}

}  // namespace detail

/// Reconnects hidden attachment constituents as typed nodes and edges.
inline KnowledgeGraph attach_subgraphs(KnowledgeGraph frag, const InternalTree& tree,
                                       const Lexicon& lexicon) {
    for (const auto& att : tree.attachments) {
        if (!att.symptom_indices.empty()) {
            // The hidden constituent itself carried symptoms ("with fever"):
            // their polarity edges already exist, so no extra node is made.
            continue;
        }
        std::vector<std::string> anchors = detail::anchor_ids(tree, att, lexicon, frag);
        bool to_patient = anchors.empty();

        AttachKind kind = att.kind;
        if (to_patient && kind != AttachKind::Generic) {
            // Severity/Duration must hang off a Symptom node; with no
            // symptom in scope they degrade to a generic relation.
            kind = AttachKind::Generic;
        }

        if (kind == AttachKind::Severity) {
            std::string label = join(att.tokens);
            std::string id = severity_node_id(label);
            frag.ensure_node({id, NodeKind::Severity, label, ""});
            for (const auto& src : anchors)
                frag.add_edge({src, id, {RelationType::Kind::HasSeverity, ""}});
        } else if (kind == AttachKind::Duration) {
            Tokens label_tokens = att.tokens;
            if (!label_tokens.empty() && lexicon.is_duration_cue_head(label_tokens.front()) &&
                label_tokens.size() > 1)
                label_tokens.erase(label_tokens.begin());
            std::string label = join(label_tokens);
            std::string id = duration_node_id(label);
            frag.ensure_node({id, NodeKind::Duration, label, ""});
            for (const auto& src : anchors)
                frag.add_edge({src, id, {RelationType::Kind::HasDuration, ""}});
        } else {
            std::string relation = att.tokens.front();
            Tokens label_tokens = att.tokens;
            if (words::prepositions().count(relation) && label_tokens.size() > 1)
                label_tokens.erase(label_tokens.begin());
            std::string label = join(label_tokens);
            std::string id = other_node_id(label);
            frag.ensure_node({id, NodeKind::Other, label, ""});
            if (to_patient) {
                frag.add_edge({patient_node_id(), id, {RelationType::Kind::Other, relation}});
            } else {
                for (const auto& src : anchors)
                    frag.add_edge({src, id, {RelationType::Kind::Other, relation}});
            }
        }
    }
    return frag;
}

/// Deletes argument-less copula relations: Other edges labelled with a bare
/// "to be" form whose target node carries no content, then any Other node
/// left with degree zero.
inline KnowledgeGraph remove_nuisance_relations(KnowledgeGraph frag) {
    static const std::set<std::string> copulas = {"is", "was", "are", "be", "been"};
    auto is_nuisance = [&](const KGEdge& e) {
        if (e.relation.kind != RelationType::Kind::Other) return false;
        if (!copulas.count(e.relation.label)) return false;
        const KGNode* dst = frag.find_node(e.dst);
        return dst && dst->label.empty();
    };
    frag.edges.erase(std::remove_if(frag.edges.begin(), frag.edges.end(), is_nuisance),
                     frag.edges.end());
    auto degree_zero = [&](const KGNode& n) {
        if (n.kind != NodeKind::Other) return false;
        for (const auto& e : frag.edges)
            if (e.src == n.id || e.dst == n.id) return false;
        return true;
    };
    frag.nodes.erase(std::remove_if(frag.nodes.begin(), frag.nodes.end(), degree_zero),
                     frag.nodes.end());
    return frag;
}

/// Union of per-sentence fragments. Node identity is the id (kind +
/// canonical label + concept); duplicate edges collapse; opposite-polarity
/// symptom edges resolve in favor of the later sentence, with the conflict
/// recorded as a diagnostic.
inline KnowledgeGraph merge_passage_graph(const std::vector<KnowledgeGraph>& fragments) {
    if (fragments.empty()) throw Error("merge_passage_graph: no fragments");
    KnowledgeGraph merged;
    merged.ensure_node({patient_node_id(), NodeKind::Patient, "patient", ""});
    auto opposite = [](RelationType::Kind k) {
        return k == RelationType::Kind::HasSymptom ? RelationType::Kind::DoesNotHaveSymptom
                                                   : RelationType::Kind::HasSymptom;
    };
    for (const auto& frag : fragments) {
        for (const auto& node : frag.nodes) merged.ensure_node(node);
        for (const auto& edge : frag.edges) {
            if (edge.relation.kind == RelationType::Kind::HasSymptom ||
                edge.relation.kind == RelationType::Kind::DoesNotHaveSymptom) {
                KGEdge conflicting{edge.src, edge.dst, {opposite(edge.relation.kind), ""}};
                if (merged.has_edge(conflicting)) {
                    merged.edges.erase(
                        std::find(merged.edges.begin(), merged.edges.end(), conflicting));
                    const KGNode* sym = merged.find_node(edge.dst);
                    merged.diagnostics.push_back(
                        "polarity conflict on \"" + (sym ? sym->label : edge.dst) +
                        "\": " + conflicting.relation.serialized() + " replaced by " +
                        edge.relation.serialized());
                }
            }
            merged.add_edge(edge);
        }
        for (const auto& d : frag.diagnostics) merged.diagnostics.push_back(d);
    }
    return merged;
}

/// Structural checks every emitted graph must satisfy.
inline void validate_graph(const KnowledgeGraph& g) {
    std::map<std::string, const KGNode*> by_id;
    std::size_t patients = 0;
    for (const auto& n : g.nodes) {
        if (!by_id.emplace(n.id, &n).second) throw SchemaError("duplicate node id: " + n.id);
        if (n.kind == NodeKind::Patient) ++patients;
        if (n.kind == NodeKind::Symptom && n.concept_id.empty())
            throw SchemaError("symptom node without concept id: " + n.id);
    }
    if (patients != 1)
        throw SchemaError("graph must have exactly one patient node, found " +
                          std::to_string(patients));
    std::set<KGEdge> seen;
    for (const auto& e : g.edges) {
        auto s = by_id.find(e.src);
        auto d = by_id.find(e.dst);
        if (s == by_id.end() || d == by_id.end())
            throw SchemaError("edge endpoint missing: " + e.src + " -> " + e.dst);
        if (e.src == e.dst) throw SchemaError("self-loop on " + e.src);
        if (!seen.insert(e).second)
            throw SchemaError("duplicate edge: " + e.src + " -> " + e.dst);
        switch (e.relation.kind) {
            case RelationType::Kind::HasSymptom:
            case RelationType::Kind::DoesNotHaveSymptom:
                if (s->second->kind != NodeKind::Patient || d->second->kind != NodeKind::Symptom)
                    throw SchemaError("symptom relation must go patient -> symptom");
                break;
            case RelationType::Kind::HasSeverity:
                if (s->second->kind != NodeKind::Symptom || d->second->kind != NodeKind::Severity)
                    throw SchemaError("has_severity must go symptom -> severity");
                break;
            case RelationType::Kind::HasDuration:
                if (s->second->kind != NodeKind::Symptom || d->second->kind != NodeKind::Duration)
                    throw SchemaError("has_duration must go symptom -> duration");
                break;
            case RelationType::Kind::Other:
                if (e.relation.label.empty()) throw SchemaError("other relation without label");
                break;
        }
    }
    for (const auto& e : g.edges) {
        bool polarity = e.relation.kind == RelationType::Kind::HasSymptom;
        if (!polarity && e.relation.kind != RelationType::Kind::DoesNotHaveSymptom) continue;
        KGEdge conflicting{e.src, e.dst,
                           {polarity ? RelationType::Kind::DoesNotHaveSymptom
                                     : RelationType::Kind::HasSymptom,
                            ""}};
        if (g.has_edge(conflicting))
            throw SchemaError("contradictory polarity on " + e.dst);
    }
    // Reachability: every symptom node must be connected to the patient.
    std::set<std::string> reach = {patient_node_id()};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& e : g.edges) {
            if (reach.count(e.src) && !reach.count(e.dst)) {
                reach.insert(e.dst);
                grew = true;
            }
            if (reach.count(e.dst) && !reach.count(e.src)) {
                reach.insert(e.src);
                grew = true;
            }
        }
    }
    for (const auto& n : g.nodes)
        if (n.kind == NodeKind::Symptom && !reach.count(n.id))
            throw SchemaError("symptom node unreachable from patient: " + n.id);
}

/// Full pipeline for one note: preprocess, parse, augment, extract, attach,
/// clean, merge. Unexpandable or unparseable segments are reported verbatim
/// in unparsed_segments.
inline KnowledgeGraph extract_note_graph(const RawNote& note, const Lexicon& lexicon,
                                         const std::set<std::string>* vocabulary = nullptr) {
    validate_note(note);
    PreprocessResult pre = preprocess_note_full(note, lexicon, vocabulary);
    std::vector<KnowledgeGraph> fragments;
    std::vector<std::string> unparsed;
    auto record_unparsed = [&](std::size_t segment_index) {
        const std::string& text = pre.segments[segment_index].original_text;
        if (std::find(unparsed.begin(), unparsed.end(), text) == unparsed.end())
            unparsed.push_back(text);
    };
    for (const auto& sentence : pre.sentences) {
        if (sentence.pattern == Pattern::Unexpandable) {
            record_unparsed(sentence.segment_index);
            continue;
        }
        try {
            ParseTree tree = parse_sentence(sentence, lexicon);
            tree.sentence_ref = sentence.segment_index;
            InternalTree internal = augment_tree(tree, lexicon);
            KnowledgeGraph frag = extract_sentence_subgraph(internal, lexicon);
            frag = attach_subgraphs(std::move(frag), internal, lexicon);
            frag = remove_nuisance_relations(std::move(frag));
            fragments.push_back(std::move(frag));
        } catch (const ParseFailure&) {
            record_unparsed(sentence.segment_index);
        }
    }
    if (fragments.empty())
        fragments.push_back([] {
            KnowledgeGraph frag;
            frag.ensure_node({patient_node_id(), NodeKind::Patient, "patient", ""});
            return frag;
        }());
    KnowledgeGraph graph = merge_passage_graph(fragments);
    graph.note_id = note.note_id;
    graph.unparsed_segments = std::move(unparsed);
    graph.canonicalize();
    validate_graph(graph);
    return graph;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::ordered_json graph_to_json(const KnowledgeGraph& g) {
    nlohmann::ordered_json doc;
    doc["note_id"] = g.note_id;
    doc["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : g.nodes) {
        nlohmann::ordered_json jn;
        jn["id"] = n.id;
        jn["kind"] = to_string(n.kind);
        jn["label"] = n.label;
        if (n.kind == NodeKind::Symptom) jn["concept_id"] = n.concept_id;
        doc["nodes"].push_back(std::move(jn));
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : g.edges) {
        nlohmann::ordered_json je;
        je["src"] = e.src;
        je["dst"] = e.dst;
        je["relation"] = e.relation.serialized();
        doc["edges"].push_back(std::move(je));
    }
    doc["unparsed_segments"] = g.unparsed_segments;
    return doc;
}

inline std::string graph_to_string(const KnowledgeGraph& g) { return graph_to_json(g).dump(2); }

inline KnowledgeGraph graph_from_json(const nlohmann::json& doc) {
    KnowledgeGraph g;
    try {
        g.note_id = doc.at("note_id").get<std::string>();
        for (const auto& jn : doc.at("nodes")) {
            KGNode n;
            n.id = jn.at("id").get<std::string>();
            n.kind = node_kind_from_string(jn.at("kind").get<std::string>());
            n.label = jn.at("label").get<std::string>();
            if (jn.contains("concept_id")) n.concept_id = jn.at("concept_id").get<std::string>();
            g.nodes.push_back(std::move(n));
        }
        for (const auto& je : doc.at("edges")) {
            KGEdge e;
            e.src = je.at("src").get<std::string>();
            e.dst = je.at("dst").get<std::string>();
            e.relation = RelationType::from_string(je.at("relation").get<std::string>());
            g.edges.push_back(std::move(e));
        }
        if (doc.contains("unparsed_segments"))
            for (const auto& s : doc.at("unparsed_segments"))
                g.unparsed_segments.push_back(s.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed graph json: ") + e.what());
    }
    return g;
}

}  // namespace notekg
