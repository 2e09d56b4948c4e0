#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace notekg {

using Tokens = std::vector<std::string>;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error("io error: " + what) {}
};

struct MalformedLexicon : Error {
    int line;
    MalformedLexicon(int line_, const std::string& reason)
        : Error("malformed lexicon (line " + std::to_string(line_) + "): " + reason), line(line_) {}
};

struct EmptyNote : Error {
    explicit EmptyNote(const std::string& note_id)
        : Error("note '" + note_id + "' contains no usable segment") {}
};

struct InvalidNote : Error {
    explicit InvalidNote(const std::string& reason) : Error("invalid note: " + reason) {}
};

struct ParseFailure : Error {
    explicit ParseFailure(const std::string& reason) : Error("parse failure: " + reason) {}
};

struct NoPatientNode : Error {
    NoPatientNode() : Error("internal tree has no patient entity node") {}
    explicit NoPatientNode(const std::string& detail)
        : Error("internal tree has no patient entity node: " + detail) {}
};

struct DanglingAttachment : Error {
    explicit DanglingAttachment(const std::string& what)
        : Error("attachment anchor not found: " + what) {}
};

struct UnknownConcept : Error {
    explicit UnknownConcept(const std::string& text)
        : Error("no lexicon entry for concept '" + text + "'") {}
};

struct NonStratified : Error {
    NonStratified() : Error("rule set is not stratified") {}
    explicit NonStratified(const std::string& detail)
        : Error("rule set is not stratified: " + detail) {}
};

struct EmptyCorpus : Error {
    EmptyCorpus() : Error("empty corpus") {}
    explicit EmptyCorpus(const std::string& detail) : Error("empty corpus: " + detail) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& what) : Error("schema error: " + what) {}
};

// ---------------------------------------------------------------------------
// Small string helpers

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline bool contains_digit(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

inline bool is_all_punct(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::ispunct(c) != 0; });
}

// Strips punctuation from both ends of a token; interior characters are kept
// so forms like "n/v" or "x-ray" survive.
inline std::string strip_edge_punct(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::ispunct(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::ispunct(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string join(const Tokens& tokens, std::string_view sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) out += sep;
        out += tokens[i];
    }
    return out;
}

inline Tokens split_ws(std::string_view s) {
    Tokens out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

// Lowercase label with spaces replaced by underscores ("shortness of breath"
// -> "shortness_of_breath"); used for node ids and symbolic atoms.
inline std::string slug(std::string_view s) {
    std::string out = to_lower(s);
    std::replace(out.begin(), out.end(), ' ', '_');
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
}

}  // namespace notekg
