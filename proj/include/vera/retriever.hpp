#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vera/common.hpp"
#include "vera/tokenizer.hpp"

namespace vera {

struct Document {
    std::string doc_id;
    std::string title;
    std::string body;
    std::optional<std::string> source_uri;
};

struct Chunk {
    std::string chunk_id;
    std::string doc_id;
    std::size_t token_start = 0;
    std::size_t token_end = 0;
    std::string text;
    std::size_t token_count = 0;
};

struct EmbeddedChunk {
    Chunk chunk;
    std::vector<double> vector;
    double norm = 0.0;
};

struct ScoredChunk {
    Chunk chunk;
    double similarity = 0.0;
};

/// Retrieved context for one query, in similarity order. Carries both the
/// original form and (after the context-edit stage) the edited form.
struct ContextBundle {
    std::string query_id;
    std::vector<ScoredChunk> chunks;
    std::size_t original_token_count = 0;
    std::optional<std::string> edited_text;
    std::optional<std::size_t> edited_token_count;

    std::string joined_text() const {
        std::string out;
        for (const auto& sc : chunks) {
            if (!out.empty()) out += "\n\n";
            out += sc.chunk.text;
        }
        return out;
    }
};

inline std::string make_chunk_id(const std::string& doc_id, std::size_t index) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%06zu", index);
    return doc_id + "#" + buf;
}

/// Token-window chunking with fixed overlap: stride = chunk_size - overlap,
/// chunk i covers tokens [i*stride, i*stride + chunk_size), clipped to the
/// document; the final chunk may be shorter.
inline std::vector<Chunk> chunk_document(const Document& doc, const WhitespaceTokenizer& tokenizer,
                                         std::size_t chunk_size, std::size_t overlap) {
    if (chunk_size == 0 || overlap >= chunk_size)
        throw Error(ErrorKind::invalid_config,
                    "overlap (" + std::to_string(overlap) + ") must be < chunk_size (" +
                        std::to_string(chunk_size) + ")");
    std::vector<std::string> tokens = tokenizer.tokenize(doc.body);
    const std::size_t total = tokens.size();
    std::vector<Chunk> chunks;
    if (total == 0) return chunks;

    const std::size_t stride = chunk_size - overlap;
    for (std::size_t i = 0;; ++i) {
        const std::size_t start = i * stride;
        if (i > 0 && start >= total) break;
        const std::size_t end = std::min(start + chunk_size, total);
        Chunk c;
        c.chunk_id = make_chunk_id(doc.doc_id, i);
        c.doc_id = doc.doc_id;
        c.token_start = start;
        c.token_end = end;
        c.text = WhitespaceTokenizer::join(tokens, start, end);
        c.token_count = end - start;
        chunks.push_back(std::move(c));
        if (end == total) break;
    }
    return chunks;
}

// ============================================================================
// Embedding
// ============================================================================

class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::size_t dimension() const = 0;
    virtual std::string name() const = 0;
    virtual std::vector<double> embed(const std::string& text) const = 0;
};

inline std::vector<std::vector<double>> embed_all(const std::vector<std::string>& texts,
                                                  const Embedder& embedder) {
    std::vector<std::vector<double>> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embedder.embed(t));
    return out;
}

/// Seeded feature-hashing embedder. Each whitespace token is hashed into a
/// bucket with a +/-1 sign and the result is L2-normalized. Fully
/// deterministic, so retrieval tests run offline.
class HashingEmbedder final : public Embedder {
public:
    explicit HashingEmbedder(std::size_t dimension = 64, std::uint64_t seed = 1)
        : dimension_(dimension), basis_(fnv1a64("seed:" + std::to_string(seed))) {
        if (dimension_ == 0)
            throw Error(ErrorKind::invalid_config, "embedder dimension must be positive");
        name_ = "hash-v1-d" + std::to_string(dimension) + "-s" + std::to_string(seed);
    }

    std::size_t dimension() const override { return dimension_; }
    std::string name() const override { return name_; }

    std::vector<double> embed(const std::string& text) const override {
        std::vector<double> vec(dimension_, 0.0);
        for (const auto& token : tokenizer_.tokenize(text)) {
            const std::uint64_t h = fnv1a64(token, basis_);
            const std::size_t bucket = static_cast<std::size_t>(h % dimension_);
            const double sign = ((h >> 32) & 1u) ? 1.0 : -1.0;
            vec[bucket] += sign;
        }
        double norm = 0.0;
        for (double v : vec) norm += v * v;
        norm = std::sqrt(norm);
        if (norm > 0.0)
            for (double& v : vec) v /= norm;
        return vec;
    }

private:
    std::size_t dimension_;
    std::uint64_t basis_;
    std::string name_;
    WhitespaceTokenizer tokenizer_;
};

inline double euclidean_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double cosine_similarity(const std::vector<double>& a, double norm_a,
                                const std::vector<double>& b, double norm_b) {
    if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    return dot / (norm_a * norm_b);
}

// ============================================================================
// Exact top-k index
// ============================================================================

struct IndexConfig {
    std::size_t chunk_size = 512;
    std::size_t overlap = 25;
    std::string tokenizer_name;
    std::string embedder_name;
    std::size_t dimension = 0;

    std::string fingerprint() const {
        std::uint64_t h = fnv1a64("index-config");
        h = fnv1a64(std::to_string(chunk_size), h);
        h = fnv1a64("|" + std::to_string(overlap), h);
        h = fnv1a64("|" + tokenizer_name, h);
        h = fnv1a64("|" + embedder_name, h);
        h = fnv1a64("|" + std::to_string(dimension), h);
        return to_hex16(h);
    }
};

/// Exact cosine top-k over embedded chunks. Build once, then read-only;
/// ties on similarity break by ascending chunk_id so retrieval is
/// deterministic.
class VectorIndex {
public:
    VectorIndex() = default;

    static VectorIndex build(const std::vector<Document>& docs,
                             std::shared_ptr<const Embedder> embedder, std::size_t chunk_size,
                             std::size_t overlap) {
        VectorIndex index;
        index.embedder_ = std::move(embedder);
        index.config_.chunk_size = chunk_size;
        index.config_.overlap = overlap;
        index.config_.tokenizer_name = index.tokenizer_.name();
        index.config_.embedder_name = index.embedder_->name();
        index.config_.dimension = index.embedder_->dimension();
        for (const auto& doc : docs) {
            if (doc.body.empty())
                throw Error(ErrorKind::format, "document '" + doc.doc_id + "' has empty body");
            for (auto& chunk : chunk_document(doc, index.tokenizer_, chunk_size, overlap)) {
                EmbeddedChunk ec;
                ec.vector = index.embedder_->embed(chunk.text);
                ec.norm = euclidean_norm(ec.vector);
                ec.chunk = std::move(chunk);
                index.chunks_.push_back(std::move(ec));
            }
        }
        return index;
    }

    /// Assemble directly from embedded chunks (synthetic corpora in tests).
    static VectorIndex from_embedded(std::vector<EmbeddedChunk> chunks, IndexConfig config,
                                     std::shared_ptr<const Embedder> embedder = nullptr) {
        VectorIndex index;
        index.config_ = std::move(config);
        index.embedder_ = std::move(embedder);
        for (auto& ec : chunks) {
            validate_norm(ec);
            index.chunks_.push_back(std::move(ec));
        }
        return index;
    }

    std::size_t size() const { return chunks_.size(); }
    bool empty() const { return chunks_.empty(); }
    const IndexConfig& config() const { return config_; }
    const std::vector<EmbeddedChunk>& chunks() const { return chunks_; }

    std::vector<ScoredChunk> retrieve_by_vector(const std::vector<double>& query_vec,
                                                std::size_t k) const {
        if (chunks_.empty()) throw Error(ErrorKind::empty_corpus, "index holds no chunks");
        if (k == 0) throw Error(ErrorKind::invalid_argument, "k must be >= 1");
        const double qnorm = euclidean_norm(query_vec);
        std::vector<std::size_t> order(chunks_.size());
        std::vector<double> sims(chunks_.size());
        for (std::size_t i = 0; i < chunks_.size(); ++i) {
            order[i] = i;
            sims[i] = cosine_similarity(query_vec, qnorm, chunks_[i].vector, chunks_[i].norm);
        }
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (sims[a] != sims[b]) return sims[a] > sims[b];
            return chunks_[a].chunk.chunk_id < chunks_[b].chunk.chunk_id;
        });
        const std::size_t take = std::min(k, order.size());
        std::vector<ScoredChunk> out;
        out.reserve(take);
        for (std::size_t i = 0; i < take; ++i)
            out.push_back({chunks_[order[i]].chunk, sims[order[i]]});
        return out;
    }

    ContextBundle retrieve(const std::string& query_id, const std::string& query,
                           std::size_t k) const {
        if (!embedder_)
            throw Error(ErrorKind::embedding_unavailable, "index has no embedder attached");
        ContextBundle bundle;
        bundle.query_id = query_id;
        bundle.chunks = retrieve_by_vector(embedder_->embed(query), k);
        for (const auto& sc : bundle.chunks) bundle.original_token_count += sc.chunk.token_count;
        return bundle;
    }

    void save(const std::string& path) const {
        ojson j;
        j["format"] = "vera-index";
        j["version"] = 1;
        j["config"] = {{"chunk_size", config_.chunk_size},
                       {"overlap", config_.overlap},
                       {"tokenizer", config_.tokenizer_name},
                       {"embedder", config_.embedder_name},
                       {"dimension", config_.dimension}};
        j["fingerprint"] = config_.fingerprint();
        ojson arr = ojson::array();
        for (const auto& ec : chunks_) {
            arr.push_back({{"chunk_id", ec.chunk.chunk_id},
                           {"doc_id", ec.chunk.doc_id},
                           {"token_start", ec.chunk.token_start},
                           {"token_end", ec.chunk.token_end},
                           {"text", ec.chunk.text},
                           {"token_count", ec.chunk.token_count},
                           {"vector", ec.vector},
                           {"norm", ec.norm}});
        }
        j["chunks"] = std::move(arr);
        write_text_file(path, j.dump(2) + "\n");
    }

    static std::string stored_fingerprint(const std::string& path) {
        ojson j = parse_index_file(path);
        return j.at("fingerprint").get<std::string>();
    }

    /// Load a persisted index. The supplied embedder must match the one the
    /// index was built with; a tokenizer or config mismatch is refused.
    static VectorIndex load(const std::string& path, std::shared_ptr<const Embedder> embedder) {
        ojson j = parse_index_file(path);
        VectorIndex index;
        const auto& cfg = j.at("config");
        index.config_.chunk_size = cfg.at("chunk_size").get<std::size_t>();
        index.config_.overlap = cfg.at("overlap").get<std::size_t>();
        index.config_.tokenizer_name = cfg.at("tokenizer").get<std::string>();
        index.config_.embedder_name = cfg.at("embedder").get<std::string>();
        index.config_.dimension = cfg.at("dimension").get<std::size_t>();
        if (index.config_.tokenizer_name != index.tokenizer_.name())
            throw Error(ErrorKind::invalid_config,
                        "index was built with tokenizer '" + index.config_.tokenizer_name +
                            "', this build uses '" + index.tokenizer_.name() + "'");
        if (embedder) {
            if (embedder->name() != index.config_.embedder_name ||
                embedder->dimension() != index.config_.dimension)
                throw Error(ErrorKind::invalid_config,
                            "index was built with embedder '" + index.config_.embedder_name +
                                "' (dim " + std::to_string(index.config_.dimension) +
                                "), got '" + embedder->name() + "'");
        }
        index.embedder_ = std::move(embedder);
        for (const auto& item : j.at("chunks")) {
            EmbeddedChunk ec;
            ec.chunk.chunk_id = item.at("chunk_id").get<std::string>();
            ec.chunk.doc_id = item.at("doc_id").get<std::string>();
            ec.chunk.token_start = item.at("token_start").get<std::size_t>();
            ec.chunk.token_end = item.at("token_end").get<std::size_t>();
            ec.chunk.text = item.at("text").get<std::string>();
            ec.chunk.token_count = item.at("token_count").get<std::size_t>();
            ec.vector = item.at("vector").get<std::vector<double>>();
            ec.norm = item.at("norm").get<double>();
            validate_norm(ec);
            index.chunks_.push_back(std::move(ec));
        }
        return index;
    }

private:
    static ojson parse_index_file(const std::string& path) {
        ojson j;
        try {
            j = ojson::parse(read_text_file(path));
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw Error(ErrorKind::format, "index file " + path + ": " + e.what());
        }
        if (j.value("format", "") != "vera-index")
            throw Error(ErrorKind::format, "not a vera index file: " + path);
        return j;
    }

    static void validate_norm(const EmbeddedChunk& ec) {
        const double recomputed = euclidean_norm(ec.vector);
        if (std::abs(recomputed - ec.norm) > 1e-9)
            throw Error(ErrorKind::contract_violation,
                        "stored norm drifts from vector for chunk " + ec.chunk.chunk_id);
    }

    WhitespaceTokenizer tokenizer_;
    IndexConfig config_;
    std::shared_ptr<const Embedder> embedder_;
    std::vector<EmbeddedChunk> chunks_;
};

// ============================================================================
// Corpus files
// ============================================================================

/// JSON-lines corpus: one {doc_id, title, body} per line.
inline std::vector<Document> load_corpus_jsonl(const std::string& path) {
    const std::string text = read_text_file(path);
    std::vector<Document> docs;
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
                        "corpus line " + std::to_string(line_no) + ": " + e.what());
        }
        Document doc;
        doc.doc_id = j.at("doc_id").get<std::string>();
        doc.title = j.value("title", "");
        doc.body = j.at("body").get<std::string>();
        if (j.contains("source_uri")) doc.source_uri = j["source_uri"].get<std::string>();
        if (doc.body.empty())
            throw Error(ErrorKind::format, "corpus line " + std::to_string(line_no) +
                                               ": document '" + doc.doc_id + "' has empty body");
        for (const auto& existing : docs)
            if (existing.doc_id == doc.doc_id)
                throw Error(ErrorKind::format, "duplicate doc_id '" + doc.doc_id + "'");
        docs.push_back(std::move(doc));
    }
    return docs;
}

/// A plain-text file is a single document named after the file.
inline std::vector<Document> load_corpus(const std::string& path) {
    auto ends_with = [&](const char* suffix) {
        std::string_view sv(path);
        std::string_view suf(suffix);
        return sv.size() >= suf.size() && sv.substr(sv.size() - suf.size()) == suf;
    };
    if (ends_with(".jsonl") || ends_with(".ndjson")) return load_corpus_jsonl(path);
    std::string body = read_text_file(path);
    auto slash = path.find_last_of("/\\");
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = stem.find_last_of('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);
    if (trim(body).empty()) return {};
    return {Document{stem, stem, std::move(body), std::nullopt}};
}

}  // namespace vera
