#pragma once

#include <map>
#include <string>
#include <vector>

#include "vera/chat.hpp"
#include "vera/common.hpp"

namespace vera {

struct CassetteEntry {
    std::string fingerprint;
    std::vector<ChatMessage> request;
    std::string response_text;
    TokenUsage token_usage;

    bool operator==(const CassetteEntry&) const = default;
};

/// An ordered recording of model exchanges. Stored as line-delimited JSON,
/// one entry per line, UTF-8. Duplicate fingerprints are kept in recorded
/// order and replayed in that order.
class Cassette {
public:
    void append(CassetteEntry entry) { entries_.push_back(std::move(entry)); }

    const std::vector<CassetteEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    std::string to_jsonl() const {
        std::string out;
        for (const auto& e : entries_) {
            ojson line = {{"fingerprint", e.fingerprint},
                          {"request", messages_to_json(e.request)},
                          {"response_text", e.response_text},
                          {"token_usage",
                           {{"prompt_tokens", e.token_usage.prompt_tokens},
                            {"completion_tokens", e.token_usage.completion_tokens}}}};
            out += line.dump();
            out.push_back('\n');
        }
        return out;
    }

    static Cassette from_jsonl(const std::string& text) {
        Cassette cassette;
        std::size_t pos = 0;
        int line_no = 0;
        while (pos < text.size()) {
            std::size_t eol = text.find('\n', pos);
            if (eol == std::string::npos) eol = text.size();
            std::string line = text.substr(pos, eol - pos);
            pos = eol + 1;
            ++line_no;
            if (trim(line).empty()) continue;
            ojson j;
            try {
                j = ojson::parse(line);
            } catch (const std::exception& e) {
                throw Error(ErrorKind::format, "cassette line " + std::to_string(line_no) +
                                                   ": " + e.what());
            }
            CassetteEntry entry;
            entry.fingerprint = j.at("fingerprint").get<std::string>();
            entry.request = messages_from_json(j.at("request"));
            entry.response_text = j.at("response_text").get<std::string>();
            entry.token_usage.prompt_tokens = j.at("token_usage").at("prompt_tokens").get<std::int64_t>();
            entry.token_usage.completion_tokens =
                j.at("token_usage").at("completion_tokens").get<std::int64_t>();
            cassette.append(std::move(entry));
        }
        return cassette;
    }

    void save(const std::string& path) const { write_text_file(path, to_jsonl()); }

    static Cassette load(const std::string& path) { return from_jsonl(read_text_file(path)); }

private:
    std::vector<CassetteEntry> entries_;
};

}  // namespace vera
