#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace notelab {

// WordPiece vocabulary: one token per line, id = line number.
class Vocab {
public:
    static Vocab from_tokens(std::vector<std::string> tokens);
    static Vocab load(const std::filesystem::path& path);

    int id_of(const std::string& token) const;  // -1 when absent
    const std::string& token_of(int id) const;
    int size() const { return static_cast<int>(tokens_.size()); }
    bool contains(const std::string& token) const { return id_of(token) >= 0; }

    int pad_id() const { return pad_id_; }
    int unk_id() const { return unk_id_; }
    int cls_id() const { return cls_id_; }
    int sep_id() const { return sep_id_; }

    void save(const std::filesystem::path& path) const;

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int> index_;
    int pad_id_ = -1, unk_id_ = -1, cls_id_ = -1, sep_id_ = -1;
};

// Pre-tokenization: lowercase (optional), split on whitespace, then split
// punctuation characters into standalone words.
std::vector<std::string> basic_words(std::string_view text, bool lowercase);

// Greedy longest-match-first WordPiece. Words longer than 100 characters or
// with no valid decomposition map to a single [UNK].
std::vector<int> wordpiece_tokenize(std::string_view text, const Vocab& vocab,
                                    bool lowercase = true);

struct ChunkSequence {
    std::string note_id;
    std::vector<std::vector<int>> chunks;  // each begins [CLS], ends [SEP]
    int max_len = 512;
};

// Splits content tokens into windows of max_len - 2, wrapping each window in
// [CLS]/[SEP]. truncate_mode keeps only the first window. Empty input yields
// one [CLS][SEP] chunk so every note has an embedding.
ChunkSequence chunk(const std::vector<int>& token_ids, const Vocab& vocab, int max_len = 512,
                    bool truncate_mode = false);

}  // namespace notelab
