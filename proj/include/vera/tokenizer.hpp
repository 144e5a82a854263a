#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace vera {

/// Deterministic whitespace tokenizer: tokens are maximal runs of
/// non-whitespace bytes. Joining tokens with single spaces reproduces the
/// input modulo whitespace normalization (runs of whitespace collapse to
/// one space, leading/trailing whitespace is dropped). Every token count
/// in the artifact -- chunking as well as context-length ratios -- comes
/// from this one scheme.
class WhitespaceTokenizer {
public:
    std::string name() const { return "whitespace-v1"; }

    std::vector<std::string> tokenize(std::string_view text) const {
        std::vector<std::string> tokens;
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && is_space(text[i])) ++i;
            std::size_t start = i;
            while (i < text.size() && !is_space(text[i])) ++i;
            if (i > start) tokens.emplace_back(text.substr(start, i - start));
        }
        return tokens;
    }

    std::size_t count(std::string_view text) const {
        std::size_t n = 0;
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && is_space(text[i])) ++i;
            std::size_t start = i;
            while (i < text.size() && !is_space(text[i])) ++i;
            if (i > start) ++n;
        }
        return n;
    }

    static std::string join(const std::vector<std::string>& tokens,
                            std::size_t begin, std::size_t end) {
        std::string out;
        for (std::size_t i = begin; i < end && i < tokens.size(); ++i) {
            if (!out.empty()) out.push_back(' ');
            out += tokens[i];
        }
        return out;
    }

private:
    static bool is_space(char c) {
        return std::isspace(static_cast<unsigned char>(c)) != 0;
    }
};

}  // namespace vera
