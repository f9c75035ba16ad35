#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace notelab {

struct ChunkSequence;

inline constexpr int kDefaultEmbeddingDim = 768;

using ChunkEmbedding = std::vector<double>;

struct EmbeddingSequence {
    std::string note_id;
    std::vector<ChunkEmbedding> embeddings;  // one per chunk, in chunk order
};

// Deterministic stand-in encoder: every token unigram and bigram hashes to a
// signed coordinate, contributions accumulate, result is L2-normalized.
// An empty chunk maps to the zero vector.
ChunkEmbedding hash_embed(const std::vector<int>& token_ids, std::uint64_t seed,
                          int dim = kDefaultEmbeddingDim);

EmbeddingSequence hash_embed_sequence(const ChunkSequence& chunks, std::uint64_t seed,
                                      int dim = kDefaultEmbeddingDim);

// Read-only index over externally produced chunk embeddings.
class EmbeddingStore {
public:
    EmbeddingStore() = default;

    void insert(const std::string& note_id, int chunk_index, ChunkEmbedding vec);
    const ChunkEmbedding& lookup(const std::string& note_id, int chunk_index) const;

    // all chunks of a note, in order; throws when any chunk is missing
    EmbeddingSequence sequence(const std::string& note_id) const;

    std::size_t size() const { return index_.size(); }
    int dim() const { return dim_; }
    std::vector<std::string> note_ids() const;

    static EmbeddingStore load(const std::filesystem::path& path, int expected_dim = 0);
    void save(const std::filesystem::path& path) const;

private:
    std::map<std::pair<std::string, int>, ChunkEmbedding> index_;
    int dim_ = 0;
};

}  // namespace notelab
