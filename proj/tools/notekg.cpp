// notekg — turn free-text consultation notes into typed knowledge graphs,
// decode them back to text, and answer symbolic questions over them.
//
// Subcommands:
//   extract        notes.jsonl -> graphs (json or jsonl)
//   reconstruct    graphs + notes -> similarity report
//   qa             graphs + questions + gold -> accuracy report
//   lexicon-check  validate (and optionally dump) lexicon files
//
// Exit codes: 0 success; 1 fatal error (bad input file, lexicon violation);
// 2 strict-mode batch failure (some note failed extraction).

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "notekg/eval.hpp"
#include "notekg/pipeline.hpp"

namespace {

using namespace notekg;

struct CommonOpts {
    std::vector<std::string> lexicons;
    std::string config_path;
    std::string out_path;
    bool strict = false;
    int parallel = 0;  // 0 = "not set on the command line"
    std::string format = "jsonl";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--lexicon", opts.lexicons, "Lexicon JSON file (repeatable; merged in order)");
    cmd->add_option("--config", opts.config_path, "Config JSON file");
    cmd->add_option("--out", opts.out_path, "Output file (default: stdout)");
    cmd->add_flag("--strict", opts.strict, "Fail the batch when any note cannot be fully parsed");
    cmd->add_option("--parallel", opts.parallel, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "jsonl"}));
}

Config make_config(const CommonOpts& opts) {
    Config cfg;
    if (!opts.config_path.empty()) cfg = load_config(opts.config_path);
    if (!opts.lexicons.empty()) {
        cfg.lexicon_path = opts.lexicons.front();
        cfg.extra_lexicon_paths.assign(opts.lexicons.begin() + 1, opts.lexicons.end());
    }
    if (opts.strict) cfg.strictness = Config::Strictness::Strict;
    if (opts.parallel > 0) cfg.parallelism = opts.parallel;
    return cfg;
}

void emit(const CommonOpts& opts, const std::string& payload) {
    if (opts.out_path.empty())
        std::cout << payload;
    else
        write_file(opts.out_path, payload);
}

int cmd_extract(const std::string& notes_path, const CommonOpts& opts) {
    Config cfg = make_config(opts);
    Resources res = Resources::load(cfg);
    NotesLoadResult loaded = load_notes_lenient(notes_path);
    bool batch_failed = false;
    for (const auto& err : loaded.errors) {
        std::cerr << "notekg: " << notes_path << ": " << err << "\n";
        if (cfg.strictness == Config::Strictness::Strict) batch_failed = true;
    }

    auto outcomes = extract_batch(loaded.notes, res, cfg.parallelism, cfg.strictness);
    std::string payload;
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const auto& outcome : outcomes) {
        if (!outcome.error.empty()) {
            std::cerr << "notekg: note " << outcome.note_id << ": " << outcome.error << "\n";
            if (cfg.strictness == Config::Strictness::Strict) batch_failed = true;
        }
        if (!outcome.graph) continue;
        if (opts.format == "jsonl")
            payload += graph_to_json(*outcome.graph).dump() + "\n";
        else
            array.push_back(graph_to_json(*outcome.graph));
    }
    if (opts.format == "json") payload = array.dump(2) + "\n";
    emit(opts, payload);
    return batch_failed ? 2 : 0;
}

int cmd_reconstruct(const std::string& graphs_path, const std::string& notes_path,
                    const CommonOpts& opts) {
    Config cfg = make_config(opts);
    Resources res = Resources::load(cfg);
    auto graphs = load_graphs(graphs_path);
    auto notes = load_notes(notes_path);

    struct Row {
        std::string note_id;
        std::string text;
        double sts = 0.0;
        bool scored = false;
    };
    auto rows = parallel_map<Row>(notes.size(), cfg.parallelism, [&](std::size_t i) {
        Row row;
        row.note_id = notes[i].note_id;
        auto it = graphs.find(notes[i].note_id);
        if (it == graphs.end()) return row;
        row.text = graph_to_text(it->second);
        std::string source =
            preprocessed_text(preprocess_note(notes[i], res.lexicon, &res.vocabulary));
        row.sts = sts(source, row.text, res.stopwords);
        row.scored = true;
        return row;
    });

    double sum = 0.0;
    long scored = 0;
    nlohmann::ordered_json per_note = nlohmann::ordered_json::array();
    std::string jsonl;
    for (const auto& row : rows) {
        if (!row.scored) {
            std::cerr << "notekg: no graph for note " << row.note_id << ", skipped\n";
            continue;
        }
        sum += row.sts;
        ++scored;
        nlohmann::ordered_json jr;
        jr["note_id"] = row.note_id;
        jr["reconstruction"] = row.text;
        jr["sts"] = row.sts;
        if (opts.format == "jsonl")
            jsonl += jr.dump() + "\n";
        else
            per_note.push_back(std::move(jr));
    }
    if (scored == 0) throw EmptyCorpus("no (graph, note) pair to score");
    double mean = sum / static_cast<double>(scored);

    if (opts.format == "jsonl") {
        nlohmann::ordered_json agg;
        agg["mean_sts"] = mean;
        agg["notes"] = scored;
        emit(opts, jsonl + agg.dump() + "\n");
    } else {
        nlohmann::ordered_json doc;
        doc["mean_sts"] = mean;
        doc["notes"] = per_note;
        emit(opts, doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_qa(const std::string& graphs_path, const std::string& questions_path,
           const std::string& gold_path, const std::string& predictions_path,
           const CommonOpts& opts) {
    Config cfg = make_config(opts);
    auto questions = load_questions(questions_path);
    auto gold = load_gold_answers(gold_path);

    std::map<std::string, std::map<int, std::string>> predictions;
    if (!predictions_path.empty()) {
        predictions = load_gold_answers(predictions_path);  // same file schema
    } else {
        Resources res = Resources::load(cfg);
        auto graphs = load_graphs(graphs_path);
        predictions = answer_batch(graphs, questions, res, cfg.parallelism);
    }

    QaReport report = score_qa(predictions, questions, gold);
    for (const auto& w : report.warnings) std::cerr << "notekg: " << w << "\n";
    emit(opts, qa_report_to_json(report).dump(2) + "\n");
    return 0;
}

int cmd_lexicon_check(const std::vector<std::string>& paths, bool dump, const CommonOpts& opts) {
    std::vector<std::filesystem::path> fs_paths(paths.begin(), paths.end());
    Lexicon lexicon;
    try {
        lexicon = Lexicon::load_merged(fs_paths);
    } catch (const MalformedLexicon& e) {
        std::cerr << "notekg: lexicon violation: " << e.what() << "\n";
        return 1;
    }
    if (dump) {
        emit(opts, lexicon.dump());
        return 0;
    }
    std::string summary = "ok: " + std::to_string(lexicon.facts().size()) + " facts, " +
                          std::to_string(lexicon.abbreviations().size()) + " abbreviations, " +
                          std::to_string(lexicon.severity_cues().size()) + " severity cues, " +
                          std::to_string(lexicon.duration_cue_heads().size()) +
                          " duration cue heads\n";
    emit(opts, summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"notekg: knowledge graphs from primary-care consultation notes"};
    app.require_subcommand(1);

    CommonOpts extract_opts, reconstruct_opts, qa_opts, lexcheck_opts;
    std::string notes_path, graphs_path, questions_path, gold_path, predictions_path;
    std::vector<std::string> check_paths;
    bool dump_lexicon = false;

    CLI::App* extract = app.add_subcommand("extract", "Notes JSONL -> knowledge graphs");
    extract->add_option("notes", notes_path, "Notes JSONL file")->required();
    add_common(extract, extract_opts);

    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "Decode graphs to text and score against notes");
    reconstruct->add_option("graphs", graphs_path, "Graphs JSONL file")->required();
    reconstruct->add_option("notes", notes_path, "Notes JSONL file")->required();
    add_common(reconstruct, reconstruct_opts);
    reconstruct_opts.format = "json";

    CLI::App* qa = app.add_subcommand("qa", "Answer questions over graphs and score against gold");
    qa->add_option("graphs", graphs_path, "Graphs JSONL file")->required();
    qa->add_option("questions", questions_path, "Questions JSON file")->required();
    qa->add_option("gold", gold_path, "Gold answers JSONL file")->required();
    qa->add_option("--predictions", predictions_path,
                   "Score this answers file instead of answering from the graphs");
    add_common(qa, qa_opts);

    CLI::App* check = app.add_subcommand("lexicon-check", "Validate lexicon files");
    check->add_option("lexicons", check_paths, "Lexicon JSON file(s)")->required();
    check->add_flag("--dump", dump_lexicon, "Print the merged lexicon in canonical form");
    check->add_option("--out", lexcheck_opts.out_path, "Output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed()) return cmd_extract(notes_path, extract_opts);
        if (reconstruct->parsed()) return cmd_reconstruct(graphs_path, notes_path, reconstruct_opts);
        if (qa->parsed()) return cmd_qa(graphs_path, questions_path, gold_path, predictions_path,
                                        qa_opts);
        if (check->parsed()) return cmd_lexicon_check(check_paths, dump_lexicon, lexcheck_opts);
    } catch (const notekg::Error& e) {
        std::cerr << "notekg: error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "notekg: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
