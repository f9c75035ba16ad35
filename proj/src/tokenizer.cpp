#include "notelab/tokenizer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

#include "notelab/jsonl.hpp"

namespace notelab {

namespace {
constexpr int kMaxInputCharsPerWord = 100;

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0; }
}  // namespace

Vocab Vocab::from_tokens(std::vector<std::string> tokens) {
    Vocab v;
    v.tokens_ = std::move(tokens);
    v.index_.reserve(v.tokens_.size());
    for (int i = 0; i < static_cast<int>(v.tokens_.size()); ++i) {
        auto [it, inserted] = v.index_.emplace(v.tokens_[static_cast<std::size_t>(i)], i);
        if (!inserted)
            throw std::invalid_argument("Vocab: duplicate token '" + it->first + "'");
    }
    v.pad_id_ = v.id_of("[PAD]");
    v.unk_id_ = v.id_of("[UNK]");
    v.cls_id_ = v.id_of("[CLS]");
    v.sep_id_ = v.id_of("[SEP]");
    if (v.pad_id_ < 0 || v.unk_id_ < 0 || v.cls_id_ < 0 || v.sep_id_ < 0)
        throw std::invalid_argument("Vocab: [PAD]/[UNK]/[CLS]/[SEP] must all be present");
    return v;
}

Vocab Vocab::load(const std::filesystem::path& path) {
    return from_tokens(read_lines(path));
}

int Vocab::id_of(const std::string& token) const {
    auto it = index_.find(token);
    return it == index_.end() ? -1 : it->second;
}

const std::string& Vocab::token_of(int id) const {
    if (id < 0 || id >= size()) throw std::out_of_range("Vocab: bad token id");
    return tokens_[static_cast<std::size_t>(id)];
}

void Vocab::save(const std::filesystem::path& path) const {
    std::string buf;
    for (const auto& t : tokens_) {
        buf += t;
        buf += '\n';
    }
    atomic_write(path, buf);
}

std::vector<std::string> basic_words(std::string_view text, bool lowercase) {
    std::vector<std::string> words;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            words.push_back(cur);
            cur.clear();
        }
    };
    for (char ch : text) {
        const unsigned char c = static_cast<unsigned char>(ch);
        if (std::isspace(c)) {
            flush();
        } else if (is_word_char(c)) {
            cur += lowercase ? static_cast<char>(std::tolower(c)) : ch;
        } else {
            // punctuation and any other byte becomes its own word
            flush();
            words.push_back(std::string(1, ch));
        }
    }
    flush();
    return words;
}

std::vector<int> wordpiece_tokenize(std::string_view text, const Vocab& vocab, bool lowercase) {
    std::vector<int> ids;
    for (const std::string& word : basic_words(text, lowercase)) {
        if (static_cast<int>(word.size()) > kMaxInputCharsPerWord) {
            ids.push_back(vocab.unk_id());
            continue;
        }
        std::vector<int> pieces;
        std::size_t start = 0;
        bool bad = false;
        while (start < word.size()) {
            std::size_t end = word.size();
            int found = -1;
            while (end > start) {
                std::string sub = word.substr(start, end - start);
                if (start > 0) sub = "##" + sub;
                found = vocab.id_of(sub);
                if (found >= 0) break;
                --end;
            }
            if (found < 0) {
                bad = true;
                break;
            }
            pieces.push_back(found);
            start = end;
        }
        if (bad) {
            ids.push_back(vocab.unk_id());
        } else {
            ids.insert(ids.end(), pieces.begin(), pieces.end());
        }
    }
    return ids;
}

ChunkSequence chunk(const std::vector<int>& token_ids, const Vocab& vocab, int max_len,
                    bool truncate_mode) {
    if (max_len < 3) throw std::invalid_argument("chunk: max_len must be >= 3");
    ChunkSequence seq;
    seq.max_len = max_len;
    const int capacity = max_len - 2;  // room for [CLS] and [SEP]
    std::size_t pos = 0;
    do {
        const std::size_t take =
            std::min<std::size_t>(static_cast<std::size_t>(capacity), token_ids.size() - pos);
        std::vector<int> c;
        c.reserve(take + 2);
        c.push_back(vocab.cls_id());
        c.insert(c.end(), token_ids.begin() + static_cast<std::ptrdiff_t>(pos),
                 token_ids.begin() + static_cast<std::ptrdiff_t>(pos + take));
        c.push_back(vocab.sep_id());
        seq.chunks.push_back(std::move(c));
        pos += take;
        if (truncate_mode) break;
    } while (pos < token_ids.size());
    return seq;
}

}  // namespace notelab
