#pragma once

#include <atomic>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "notekg/common.hpp"
#include "notekg/eval.hpp"
#include "notekg/kg.hpp"
#include "notekg/preprocess.hpp"
#include "notekg/qa.hpp"
#include "notekg/reconstruct.hpp"

namespace notekg {

struct Config {
    std::string lexicon_path;
    std::vector<std::string> extra_lexicon_paths;
    std::string stopword_path;
    std::string severity_class_map_path;
    std::string onset_bins_path;
    std::string wordlist_path;  // common-English spell-check vocabulary
    int parallelism = 1;
    enum class Strictness { Lenient, Strict };
    Strictness strictness = Strictness::Lenient;
};

inline Config load_config(const std::string& path) {
    Config cfg;
    try {
        nlohmann::json doc = nlohmann::json::parse(read_file(path));
        if (doc.contains("lexicon_path")) cfg.lexicon_path = doc["lexicon_path"];
        if (doc.contains("extra_lexicon_paths"))
            for (const auto& p : doc["extra_lexicon_paths"])
                cfg.extra_lexicon_paths.push_back(p.get<std::string>());
        if (doc.contains("stopword_path")) cfg.stopword_path = doc["stopword_path"];
        if (doc.contains("severity_class_map_path"))
            cfg.severity_class_map_path = doc["severity_class_map_path"];
        if (doc.contains("onset_bins_path")) cfg.onset_bins_path = doc["onset_bins_path"];
        if (doc.contains("wordlist_path")) cfg.wordlist_path = doc["wordlist_path"];
        if (doc.contains("parallelism")) cfg.parallelism = doc["parallelism"].get<int>();
        if (doc.contains("strict") && doc["strict"].get<bool>())
            cfg.strictness = Config::Strictness::Strict;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed config file: ") + e.what());
    }
    if (cfg.parallelism < 1) throw SchemaError("config: parallelism must be >= 1");
    return cfg;
}

/// Everything the pipeline needs loaded once and shared read-only.
struct Resources {
    Lexicon lexicon;
    std::set<std::string> vocabulary;
    Stopwords stopwords = default_stopwords();
    SeverityClassMap severity_map = default_severity_classes();
    OnsetBins onset_bins = default_onset_bins();

    static Resources load(const Config& cfg) {
        Resources r;
        if (cfg.lexicon_path.empty()) throw SchemaError("config: lexicon_path is required");
        std::vector<std::filesystem::path> paths = {cfg.lexicon_path};
        paths.insert(paths.end(), cfg.extra_lexicon_paths.begin(),
                     cfg.extra_lexicon_paths.end());
        r.lexicon = Lexicon::load_merged(paths);
        std::set<std::string> wordlist;
        if (!cfg.wordlist_path.empty())
            for (const auto& w : split_ws(read_file(cfg.wordlist_path)))
                wordlist.insert(to_lower(w));
        r.vocabulary = build_vocabulary(r.lexicon, wordlist);
        r.stopwords =
            cfg.stopword_path.empty() ? default_stopwords() : load_stopwords(cfg.stopword_path);
        r.severity_map = cfg.severity_class_map_path.empty()
                             ? default_severity_classes()
                             : load_severity_classes(cfg.severity_class_map_path);
        r.onset_bins = cfg.onset_bins_path.empty() ? default_onset_bins()
                                                   : load_onset_bins(cfg.onset_bins_path);
        return r;
    }
};

/// Runs fn(i) for i in [0, n) over `parallelism` threads pulling work from a
/// shared counter; results land at their input index, so output order (and
/// bytes) never depend on scheduling.
template <typename T, typename Fn>
inline std::vector<T> parallel_map(std::size_t n, int parallelism, Fn&& fn) {
    std::vector<T> out(n);
    if (n == 0) return out;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            out[i] = fn(i);
        }
    };
    int threads = std::max(1, std::min<int>(parallelism, static_cast<int>(n)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

struct NoteOutcome {
    std::string note_id;
    std::optional<KnowledgeGraph> graph;
    std::string error;  // nonempty iff extraction failed

    bool ok() const { return graph.has_value() && error.empty(); }
};

/// Extracts graphs for a batch of notes. In Strict mode a note with any
/// unparsed segment counts as failed; in Lenient mode unparsed segments
/// ride along in the graph.
inline std::vector<NoteOutcome> extract_batch(const std::vector<RawNote>& notes,
                                              const Resources& resources, int parallelism,
                                              Config::Strictness strictness =
                                                  Config::Strictness::Lenient) {
    return parallel_map<NoteOutcome>(notes.size(), parallelism, [&](std::size_t i) {
        NoteOutcome outcome;
        outcome.note_id = notes[i].note_id;
        try {
            KnowledgeGraph g =
                extract_note_graph(notes[i], resources.lexicon, &resources.vocabulary);
            if (strictness == Config::Strictness::Strict && !g.unparsed_segments.empty()) {
                outcome.error = "unparsed segments: " + std::to_string(g.unparsed_segments.size());
                outcome.graph = std::move(g);
            } else {
                outcome.graph = std::move(g);
            }
        } catch (const Error& e) {
            outcome.error = e.what();
        }
        return outcome;
    });
}

/// Reconstruction + similarity for a batch; notes that fail extraction get
/// an empty reconstruction and score 0.
inline std::vector<Reconstruction> reconstruct_batch(const std::vector<RawNote>& notes,
                                                     const Resources& resources,
                                                     int parallelism) {
    return parallel_map<Reconstruction>(notes.size(), parallelism, [&](std::size_t i) {
        try {
            return reconstruct_note(notes[i], resources.lexicon, resources.stopwords,
                                    &resources.vocabulary);
        } catch (const Error&) {
            Reconstruction rec;
            rec.note_id = notes[i].note_id;
            return rec;
        }
    });
}

/// Predicted answers for every (graph, question) pair.
inline std::map<std::string, std::map<int, std::string>> answer_batch(
    const std::map<std::string, KnowledgeGraph>& graphs, const std::vector<Question>& questions,
    const Resources& resources, int parallelism) {
    std::vector<const KnowledgeGraph*> ordered;
    ordered.reserve(graphs.size());
    for (const auto& [id, g] : graphs) ordered.push_back(&g);
    auto rows = parallel_map<std::map<int, std::string>>(
        ordered.size(), parallelism, [&](std::size_t i) {
            std::map<int, std::string> answers;
            for (const auto& q : questions)
                answers[q.id] = answer_question(*ordered[i], q, resources.lexicon,
                                                resources.severity_map, resources.onset_bins);
            return answers;
        });
    std::map<std::string, std::map<int, std::string>> out;
    for (std::size_t i = 0; i < ordered.size(); ++i) out[ordered[i]->note_id] = std::move(rows[i]);
    return out;
}

}  // namespace notekg
