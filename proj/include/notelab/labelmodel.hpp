#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "notelab/labeling.hpp"
#include "notelab/types.hpp"

namespace notelab {

struct LabelModelParams {
    int n_classes = 0;
    std::vector<double> class_prior;  // length K, sums to 1
    std::vector<double> accuracy;     // per LF, clamped into (1/K, 1)
    std::vector<double> propensity;   // per LF, probability of voting
    std::vector<std::string> lf_names;

    void save(const std::filesystem::path& path) const;
    static LabelModelParams load(const std::filesystem::path& path);
};

struct LabelModelFitConfig {
    int max_iters = 100;
    double tol = 1e-6;
    double init_accuracy = 0.7;
};

struct LabelModelFit {
    LabelModelParams params;
    std::vector<double> log_likelihood;  // one entry per iteration, non-decreasing
    int iterations = 0;
};

// EM for the generative model
//   P(votes | y) = prod_j (1-p_j)                    if LF j abstained
//                  p_j * a_j                         if LF j voted y
//                  p_j * (1-a_j)/(K-1)               otherwise
// Accuracies are clamped into [1/K + eps, 1 - eps] to keep EM away from
// degenerate fixed points; propensities have the closed form coverage_j.
LabelModelFit fit_em(const VoteMatrix& votes, int n_classes,
                     const LabelModelFitConfig& config = {});

struct Decoded {
    int label = kAbstain;
    double confidence = 0.0;
    std::vector<double> posterior;  // empty when every LF abstained
};

// argmax posterior with ties broken toward the lowest class index; abstains
// when all LFs abstained or the confidence falls below the threshold
Decoded decode(const std::vector<int>& votes_row, const LabelModelParams& params,
               double confidence_threshold = 0.0);

struct LfDiagnostics {
    std::string lf_name;
    double coverage = 0.0;  // voted
    double overlap = 0.0;   // voted alongside at least one other LF
    double conflict = 0.0;  // voted and at least one other voting LF disagreed
};

std::vector<LfDiagnostics> diagnostics(const VoteMatrix& votes);

struct SilverLabel {
    std::string note_id;
    double value = 0.0;
    double confidence = 0.0;
};

// Writes {"note_id","edss","confidence","provenance":"silver"} records.
void save_silver_labels(const std::filesystem::path& path,
                        const std::vector<SilverLabel>& labels);

// Decodes every row of the vote matrix; rows that decode to an abstention are
// dropped from the output.
std::vector<SilverLabel> silver_from_label_model(const VoteMatrix& votes,
                                                 const LabelModelParams& params,
                                                 const LabelSpace& space, double threshold);

}  // namespace notelab
