#include "notelab/embed.hpp"

#include <cmath>
#include <stdexcept>

#include "notelab/jsonl.hpp"
#include "notelab/rng.hpp"
#include "notelab/tokenizer.hpp"

namespace notelab {

namespace {

void accumulate(std::uint64_t seed, std::uint64_t tag, std::uint64_t a, std::uint64_t b, int dim,
                ChunkEmbedding& vec) {
    std::uint64_t h = mix64(seed ^ mix64(tag));
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    const std::size_t idx = static_cast<std::size_t>(h % static_cast<std::uint64_t>(dim));
    const double sign = (mix64(h ^ 0x5851F42D4C957F2DULL) & 1) ? 1.0 : -1.0;
    vec[idx] += sign;
}

}  // namespace

ChunkEmbedding hash_embed(const std::vector<int>& token_ids, std::uint64_t seed, int dim) {
    if (dim <= 0) throw std::invalid_argument("hash_embed: dim must be positive");
    ChunkEmbedding vec(static_cast<std::size_t>(dim), 0.0);
    if (token_ids.empty()) return vec;
    for (std::size_t i = 0; i < token_ids.size(); ++i) {
        const auto t = static_cast<std::uint64_t>(token_ids[i]);
        accumulate(seed, 1, t, 0, dim, vec);
        if (i + 1 < token_ids.size())
            accumulate(seed, 2, t, static_cast<std::uint64_t>(token_ids[i + 1]), dim, vec);
    }
    double norm2 = 0.0;
    for (double x : vec) norm2 += x * x;
    if (norm2 > 0.0) {
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& x : vec) x *= inv;
    }
    return vec;
}

EmbeddingSequence hash_embed_sequence(const ChunkSequence& chunks, std::uint64_t seed, int dim) {
    EmbeddingSequence seq;
    seq.note_id = chunks.note_id;
    seq.embeddings.reserve(chunks.chunks.size());
    for (const auto& c : chunks.chunks) seq.embeddings.push_back(hash_embed(c, seed, dim));
    return seq;
}

void EmbeddingStore::insert(const std::string& note_id, int chunk_index, ChunkEmbedding vec) {
    if (dim_ == 0) dim_ = static_cast<int>(vec.size());
    if (static_cast<int>(vec.size()) != dim_)
        throw std::runtime_error("embedding store: dimension mismatch for " + note_id + "/" +
                                 std::to_string(chunk_index) + ": got " +
                                 std::to_string(vec.size()) + ", expected " +
                                 std::to_string(dim_));
    for (double x : vec)
        if (!std::isfinite(x))
            throw std::runtime_error("embedding store: non-finite value in " + note_id + "/" +
                                     std::to_string(chunk_index));
    auto [it, inserted] = index_.emplace(std::make_pair(note_id, chunk_index), std::move(vec));
    if (!inserted)
        throw std::runtime_error("embedding store: duplicate entry " + note_id + "/" +
                                 std::to_string(chunk_index));
}

const ChunkEmbedding& EmbeddingStore::lookup(const std::string& note_id, int chunk_index) const {
    auto it = index_.find(std::make_pair(note_id, chunk_index));
    if (it == index_.end())
        throw std::runtime_error("embedding store: no entry " + note_id + "/" +
                                 std::to_string(chunk_index));
    return it->second;
}

EmbeddingSequence EmbeddingStore::sequence(const std::string& note_id) const {
    EmbeddingSequence seq;
    seq.note_id = note_id;
    for (int c = 0;; ++c) {
        auto it = index_.find(std::make_pair(note_id, c));
        if (it == index_.end()) break;
        seq.embeddings.push_back(it->second);
    }
    if (seq.embeddings.empty())
        throw std::runtime_error("embedding store: no entry " + note_id + "/0");
    return seq;
}

std::vector<std::string> EmbeddingStore::note_ids() const {
    std::vector<std::string> ids;
    for (const auto& [key, _] : index_)
        if (key.second == 0) ids.push_back(key.first);
    return ids;
}

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path, int expected_dim) {
    EmbeddingStore store;
    store.dim_ = expected_dim;
    for (const auto& j : read_jsonl(path)) {
        ChunkEmbedding vec = j.at("vec").get<ChunkEmbedding>();
        store.insert(j.at("note_id").get<std::string>(), j.at("chunk").get<int>(),
                     std::move(vec));
    }
    return store;
}

void EmbeddingStore::save(const std::filesystem::path& path) const {
    std::vector<ordered_json> records;
    records.reserve(index_.size());
    for (const auto& [key, vec] : index_) {
        ordered_json j;
        j["note_id"] = key.first;
        j["chunk"] = key.second;
        j["vec"] = vec;
        records.push_back(std::move(j));
    }
    write_jsonl(path, records);
}

}  // namespace notelab
