#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace vera {

// Insertion-ordered JSON everywhere an artifact file is written, so that
// identical inputs serialize to identical bytes.
using ojson = nlohmann::ordered_json;

enum class ErrorKind {
    invalid_argument,
    invalid_config,
    io,
    format,
    transport,
    retries_exhausted,
    cassette_miss,
    mock_miss,
    empty_completion,
    render,
    parse,
    contract_violation,
    stage,
    empty_corpus,
    embedding_unavailable,
};

inline const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_argument: return "invalid_argument";
        case ErrorKind::invalid_config: return "invalid_config";
        case ErrorKind::io: return "io";
        case ErrorKind::format: return "format";
        case ErrorKind::transport: return "transport";
        case ErrorKind::retries_exhausted: return "retries_exhausted";
        case ErrorKind::cassette_miss: return "cassette_miss";
        case ErrorKind::mock_miss: return "mock_miss";
        case ErrorKind::empty_completion: return "empty_completion";
        case ErrorKind::render: return "render";
        case ErrorKind::parse: return "parse";
        case ErrorKind::contract_violation: return "contract_violation";
        case ErrorKind::stage: return "stage";
        case ErrorKind::empty_corpus: return "empty_corpus";
        case ErrorKind::embedding_unavailable: return "embedding_unavailable";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// 64-bit FNV-1a. Used wherever the artifact needs a hash that is stable
// across runs, platforms and standard-library implementations.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string to_hex16(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

inline std::string rtrim(std::string_view s) {
    std::size_t end = s.size();
    while (end > 0 && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(0, end));
}

inline std::string ltrim(std::string_view s) {
    std::size_t begin = 0;
    while (begin < s.size() && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    return std::string(s.substr(begin));
}

inline std::string trim(std::string_view s) { return rtrim(ltrim(s)); }

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::io, "write failed: " + path);
}

}  // namespace vera
