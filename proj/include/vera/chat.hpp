#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "vera/common.hpp"

namespace vera {

enum class ModelRole { generator, evaluator };

inline const char* model_role_name(ModelRole role) {
    return role == ModelRole::generator ? "generator" : "evaluator";
}

/// One chat model endpoint plus the knobs used when calling it. The
/// endpoint is either an http(s) URL (live) or one of the backend tags
/// "mock" / "replay".
struct ModelProfile {
    std::string name;
    ModelRole role = ModelRole::generator;
    std::string endpoint = "mock";
    double temperature = 0.0;
    int max_output_tokens = 1024;
    std::chrono::milliseconds request_timeout{30000};
    int max_retries = 2;

    bool is_live() const {
        return endpoint.rfind("http://", 0) == 0 || endpoint.rfind("https://", 0) == 0;
    }
};

inline ModelProfile make_generator_profile(std::string name, std::string endpoint = "mock",
                                           double temperature = 0.7) {
    ModelProfile p;
    p.name = std::move(name);
    p.role = ModelRole::generator;
    p.endpoint = std::move(endpoint);
    p.temperature = temperature;
    return p;
}

// Evaluator profiles default to temperature 0: the judge should be as
// deterministic as the serving stack allows.
inline ModelProfile make_evaluator_profile(std::string name, std::string endpoint = "mock") {
    ModelProfile p;
    p.name = std::move(name);
    p.role = ModelRole::evaluator;
    p.endpoint = std::move(endpoint);
    p.temperature = 0.0;
    return p;
}

struct ChatMessage {
    std::string speaker;  // "system" | "user" | "assistant"
    std::string text;

    bool operator==(const ChatMessage&) const = default;
};

struct TokenUsage {
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;

    bool operator==(const TokenUsage&) const = default;
};

enum class BackendKind { live, mock, replay };

inline const char* backend_kind_name(BackendKind kind) {
    switch (kind) {
        case BackendKind::live: return "live";
        case BackendKind::mock: return "mock";
        case BackendKind::replay: return "replay";
    }
    return "unknown";
}

/// One request/response round trip through the gateway.
struct ChatExchange {
    std::vector<ChatMessage> request;
    std::string response_text;
    std::chrono::milliseconds latency{0};
    TokenUsage token_usage;
    BackendKind backend = BackendKind::mock;
};

/// Stable fingerprint of a message list. Trailing whitespace per message is
/// ignored; message order and speaker tags are significant.
inline std::string fingerprint(const std::vector<ChatMessage>& messages) {
    if (messages.empty())
        throw Error(ErrorKind::invalid_argument, "fingerprint over empty message list");
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& m : messages) {
        h = fnv1a64(m.speaker, h);
        h = fnv1a64("\x1f", h);
        h = fnv1a64(rtrim(m.text), h);
        h = fnv1a64("\x1e", h);
    }
    return to_hex16(h);
}

inline ojson messages_to_json(const std::vector<ChatMessage>& messages) {
    ojson arr = ojson::array();
    for (const auto& m : messages) arr.push_back({{"speaker", m.speaker}, {"text", m.text}});
    return arr;
}

inline std::vector<ChatMessage> messages_from_json(const ojson& arr) {
    std::vector<ChatMessage> out;
    for (const auto& item : arr)
        out.push_back({item.at("speaker").get<std::string>(), item.at("text").get<std::string>()});
    return out;
}

}  // namespace vera
