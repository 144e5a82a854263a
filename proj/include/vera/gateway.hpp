#pragma once

#include <chrono>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

#include "vera/cassette.hpp"
#include "vera/chat.hpp"
#include "vera/common.hpp"
#include "vera/tokenizer.hpp"

namespace vera {

/// One scripted response. A rule fires when every needle occurs in the
/// rendered prompt (the request texts joined with newlines). Rules are
/// checked in order; the first match wins; no match is an error, never a
/// silent default.
struct MockRule {
    std::vector<std::string> needles;
    std::string response;
};

class MockScript {
public:
    MockScript() = default;

    void add(std::vector<std::string> needles, std::string response) {
        rules_.push_back({std::move(needles), std::move(response)});
    }

    void add(std::string needle, std::string response) {
        rules_.push_back({{std::move(needle)}, std::move(response)});
    }

    std::size_t size() const { return rules_.size(); }

    const std::string& match(const std::string& rendered_prompt) const {
        for (const auto& rule : rules_) {
            bool all = true;
            for (const auto& needle : rule.needles) {
                if (rendered_prompt.find(needle) == std::string::npos) {
                    all = false;
                    break;
                }
            }
            if (all) return rule.response;
        }
        std::string preview = rendered_prompt.size() > 160
                                  ? rendered_prompt.substr(rendered_prompt.size() - 160)
                                  : rendered_prompt;
        throw Error(ErrorKind::mock_miss, "no mock rule matches prompt ending with: " + preview);
    }

    /// JSONL: one {"match": "needle" | ["n1","n2"], "response": "..."} per line.
    static MockScript from_jsonl(const std::string& text) {
        MockScript script;
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
                throw Error(ErrorKind::format,
                            "mock script line " + std::to_string(line_no) + ": " + e.what());
            }
            std::vector<std::string> needles;
            const auto& m = j.at("match");
            if (m.is_string()) {
                needles.push_back(m.get<std::string>());
            } else {
                for (const auto& n : m) needles.push_back(n.get<std::string>());
            }
            script.add(std::move(needles), j.at("response").get<std::string>());
        }
        return script;
    }

    static MockScript load(const std::string& path) { return from_jsonl(read_text_file(path)); }

private:
    std::vector<MockRule> rules_;
};

/// Uniform access to chat models. Profiles select a backend through their
/// endpoint field: "mock" plays the gateway's scripted rules, "replay"
/// serves a loaded cassette, an http(s) URL is called live. Independently
/// of the backend, record_to() appends every successful exchange to a
/// cassette file. Safe for concurrent calls from multiple workers.
class ChatGateway {
public:
    ChatGateway() = default;

    void set_mock_script(MockScript script) {
        std::lock_guard<std::mutex> lock(mutex_);
        mock_ = std::move(script);
    }

    void set_replay(Cassette cassette) {
        std::lock_guard<std::mutex> lock(mutex_);
        replay_ = std::move(cassette);
        rebuild_replay_index();
    }

    void load_replay(const std::string& path) { set_replay(Cassette::load(path)); }

    /// Forget replay progress so the same cassette can serve another run.
    void reset_replay_cursors() {
        std::lock_guard<std::mutex> lock(mutex_);
        for (auto& [fp, cursor] : replay_cursor_) cursor = 0;
    }

    void record_to(const std::string& path, bool truncate = true) {
        std::lock_guard<std::mutex> lock(mutex_);
        record_path_ = path;
        if (truncate) write_text_file(path, "");
    }

    void set_api_key(std::string key) {
        std::lock_guard<std::mutex> lock(mutex_);
        api_key_override_ = std::move(key);
    }

    int calls(const std::string& profile_name) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = call_counts_.find(profile_name);
        return it == call_counts_.end() ? 0 : it->second;
    }

    int total_calls() const {
        std::lock_guard<std::mutex> lock(mutex_);
        int total = 0;
        for (const auto& [name, n] : call_counts_) total += n;
        return total;
    }

    ChatExchange complete(const ModelProfile& profile, const std::vector<ChatMessage>& messages) {
        if (messages.empty())
            throw Error(ErrorKind::invalid_argument, "complete() with empty message list");
        if (messages.back().speaker != "user")
            throw Error(ErrorKind::invalid_argument, "final message must carry the user tag");

        {
            std::lock_guard<std::mutex> lock(mutex_);
            ++call_counts_[profile.name];
        }

        ChatExchange exchange;
        if (profile.endpoint == "mock") {
            exchange = complete_mock(messages);
        } else if (profile.endpoint == "replay") {
            exchange = complete_replay(messages);
        } else if (profile.is_live()) {
            exchange = complete_live(profile, messages);
        } else {
            throw Error(ErrorKind::invalid_config,
                        "profile '" + profile.name + "' has unresolvable endpoint '" +
                            profile.endpoint + "'");
        }

        if (exchange.response_text.empty())
            throw Error(ErrorKind::empty_completion,
                        "model '" + profile.name + "' returned empty output");

        maybe_record(messages, exchange);
        return exchange;
    }

private:
    ChatExchange complete_mock(const std::vector<ChatMessage>& messages) {
        std::string rendered;
        for (const auto& m : messages) {
            if (!rendered.empty()) rendered.push_back('\n');
            rendered += m.text;
        }
        std::string response;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            response = mock_.match(rendered);
        }
        ChatExchange ex;
        ex.request = messages;
        ex.response_text = response;
        ex.backend = BackendKind::mock;
        WhitespaceTokenizer tok;
        for (const auto& m : messages)
            ex.token_usage.prompt_tokens += static_cast<std::int64_t>(tok.count(m.text));
        ex.token_usage.completion_tokens = static_cast<std::int64_t>(tok.count(response));
        return ex;
    }

    ChatExchange complete_replay(const std::vector<ChatMessage>& messages) {
        const std::string fp = fingerprint(messages);
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = replay_index_.find(fp);
        if (it == replay_index_.end())
            throw Error(ErrorKind::cassette_miss, "no cassette entry for fingerprint " + fp);
        std::size_t& cursor = replay_cursor_[fp];
        if (cursor >= it->second.size())
            throw Error(ErrorKind::cassette_miss,
                        "cassette entries for fingerprint " + fp + " exhausted");
        const CassetteEntry& entry = replay_.entries()[it->second[cursor]];
        ++cursor;
        ChatExchange ex;
        ex.request = messages;
        ex.response_text = entry.response_text;
        ex.token_usage = entry.token_usage;
        ex.backend = BackendKind::replay;
        return ex;
    }

    ChatExchange complete_live(const ModelProfile& profile,
                               const std::vector<ChatMessage>& messages) {
        std::string api_key;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            api_key = api_key_override_;
        }
        if (api_key.empty()) {
            const char* env = std::getenv("VERA_API_KEY");
            if (!env) env = std::getenv("OPENAI_API_KEY");
            if (env) api_key = env;
        }
        if (api_key.empty())
            throw Error(ErrorKind::invalid_config,
                        "live profile '" + profile.name +
                            "' requires an API key (VERA_API_KEY or OPENAI_API_KEY)");

        auto [origin, path_prefix] = split_endpoint(profile.endpoint);

        ojson body;
        body["model"] = wire_model_id(profile.name);
        ojson msgs = ojson::array();
        for (const auto& m : messages) msgs.push_back({{"role", m.speaker}, {"content", m.text}});
        body["messages"] = std::move(msgs);
        body["temperature"] = profile.temperature;
        body["max_tokens"] = profile.max_output_tokens;
        const std::string payload = body.dump();

        httplib::Headers headers = {{"Authorization", "Bearer " + api_key}};
        const std::string path = path_prefix + "/chat/completions";

        const auto start = std::chrono::steady_clock::now();
        std::string last_failure = "no attempt made";
        for (int attempt = 0; attempt <= profile.max_retries; ++attempt) {
            if (attempt > 0)
                std::this_thread::sleep_for(std::chrono::milliseconds(50 * attempt));
            httplib::Client client(origin);
            client.set_connection_timeout(profile.request_timeout);
            client.set_read_timeout(profile.request_timeout);
            auto result = client.Post(path, headers, payload, "application/json");
            if (!result) {
                last_failure = "transport: " + httplib::to_string(result.error());
                continue;
            }
            if (result->status == 429 || result->status >= 500) {
                last_failure = "http " + std::to_string(result->status);
                continue;
            }
            if (result->status != 200)
                throw Error(ErrorKind::transport, "http " + std::to_string(result->status) +
                                                      " from " + origin + path + ": " +
                                                      result->body);
            return parse_live_response(messages, result->body, start);
        }
        throw Error(ErrorKind::retries_exhausted,
                    "gave up after " + std::to_string(profile.max_retries + 1) + " attempts (" +
                        last_failure + ")");
    }

    ChatExchange parse_live_response(const std::vector<ChatMessage>& messages,
                                     const std::string& body,
                                     std::chrono::steady_clock::time_point start) {
        ojson j;
        try {
            j = ojson::parse(body);
        } catch (const std::exception& e) {
            throw Error(ErrorKind::transport, std::string("unparseable completion body: ") + e.what());
        }
        ChatExchange ex;
        ex.request = messages;
        ex.backend = BackendKind::live;
        try {
            ex.response_text = j.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const std::exception& e) {
            throw Error(ErrorKind::transport,
                        std::string("completion body missing choices[0].message.content: ") +
                            e.what());
        }
        if (j.contains("usage")) {
            ex.token_usage.prompt_tokens = j["usage"].value("prompt_tokens", 0);
            ex.token_usage.completion_tokens = j["usage"].value("completion_tokens", 0);
        }
        ex.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        return ex;
    }

    void maybe_record(const std::vector<ChatMessage>& messages, const ChatExchange& exchange) {
        std::lock_guard<std::mutex> lock(mutex_);
        if (record_path_.empty()) return;
        CassetteEntry entry;
        entry.fingerprint = fingerprint(messages);
        entry.request = messages;
        entry.response_text = exchange.response_text;
        entry.token_usage = exchange.token_usage;
        Cassette one;
        one.append(entry);
        std::ofstream out(record_path_, std::ios::binary | std::ios::app);
        if (!out) throw Error(ErrorKind::io, "cannot append to cassette: " + record_path_);
        out << one.to_jsonl();
    }

    void rebuild_replay_index() {
        replay_index_.clear();
        replay_cursor_.clear();
        for (std::size_t i = 0; i < replay_.entries().size(); ++i)
            replay_index_[replay_.entries()[i].fingerprint].push_back(i);
    }

    // "name#tag" lets two profiles share a wire model id while keeping
    // profile names unique within a configuration.
    static std::string wire_model_id(const std::string& profile_name) {
        auto pos = profile_name.find('#');
        return pos == std::string::npos ? profile_name : profile_name.substr(0, pos);
    }

    static std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
        auto scheme_end = endpoint.find("://");
        if (scheme_end == std::string::npos)
            throw Error(ErrorKind::invalid_config, "bad endpoint URL: " + endpoint);
        auto path_start = endpoint.find('/', scheme_end + 3);
        if (path_start == std::string::npos) return {endpoint, ""};
        std::string prefix = endpoint.substr(path_start);
        while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
        return {endpoint.substr(0, path_start), prefix};
    }

    mutable std::mutex mutex_;
    MockScript mock_;
    Cassette replay_;
    std::map<std::string, std::vector<std::size_t>> replay_index_;
    std::map<std::string, std::size_t> replay_cursor_;
    std::string record_path_;
    std::string api_key_override_;
    std::map<std::string, int> call_counts_;
};

}  // namespace vera
