#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "notelab/types.hpp"

namespace notelab {

struct Note;

struct VoteMatrix {
    std::vector<std::string> note_ids;
    std::vector<std::string> lf_names;
    std::vector<std::vector<int>> votes;  // votes[item][lf], kAbstain allowed

    std::size_t n_items() const { return note_ids.size(); }
    std::size_t n_lfs() const { return lf_names.size(); }
};

enum class RbStrategy { last_occurrence, nearest_to_keyword };

struct RbConfig {
    int window = 10;  // words on either side of the keyword
    RbStrategy strategy = RbStrategy::last_occurrence;
};

// Keyword search for "EDSS": decimal scores in the label space, or lowercase
// roman numerals i..x mapped to 1.0..10.0 and accepted only when the value is
// in the space. Several distinct candidates resolve by strategy; none found
// means abstain.
int rb_extract_edss(const std::string& text, const LabelSpace& space,
                    const RbConfig& config = {});

// Rule-based vote wins whenever it is not an abstention.
inline int combine_sequential(int rb_vote, int model_prediction) {
    return rb_vote == kAbstain ? model_prediction : rb_vote;
}

struct TfidfModel {
    std::vector<std::string> vocabulary;  // term for each column
    std::map<std::string, int> term_to_col;
    std::vector<double> idf;
    std::vector<std::vector<double>> weights;  // [feature][class]
    std::vector<double> bias;                  // [class]
    std::vector<long long> class_counts;       // training prior
    int n_classes = 0;
    int prior_argmax = 0;

    void save(const std::filesystem::path& path) const;
    static TfidfModel load(const std::filesystem::path& path);
};

struct TfidfFitConfig {
    int max_features = 1500;
    double inverse_reg_strength = 100.0;  // l2 strength is 1/C
    int max_iters = 5000;
    double grad_tol = 1e-5;
};

TfidfModel tfidf_fit(const std::vector<std::string>& train_texts,
                     const std::vector<int>& train_labels, int n_classes,
                     const TfidfFitConfig& config = {});

// never abstains; a document with no known terms gets the training-prior class
int tfidf_predict(const TfidfModel& model, const std::string& text);

using LabelingFunction = std::function<int(const Note&)>;

struct RegisteredLf {
    std::string name;
    LabelingFunction fn;
};

// column order = registration order; an LF that throws on a note is recorded
// as an abstention and the failure is collected as a warning
VoteMatrix apply_lfs(const std::vector<Note>& notes, const std::vector<RegisteredLf>& lfs,
                     std::vector<std::string>* warnings = nullptr);

void save_votes(const std::filesystem::path& path, const VoteMatrix& votes);
VoteMatrix load_votes(const std::filesystem::path& path);

}  // namespace notelab
