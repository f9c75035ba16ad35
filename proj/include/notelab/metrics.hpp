#pragma once

#include <string>
#include <vector>

#include "notelab/jsonl.hpp"
#include "notelab/types.hpp"

namespace notelab {

struct ConfusionMatrix {
    int k = 0;
    std::vector<long long> counts;  // row = gold, column = predicted

    explicit ConfusionMatrix(int classes = 0)
        : k(classes), counts(static_cast<std::size_t>(classes) * classes, 0) {}

    long long& at(int gold, int pred) {
        return counts[static_cast<std::size_t>(gold) * k + pred];
    }
    long long at(int gold, int pred) const {
        return counts[static_cast<std::size_t>(gold) * k + pred];
    }
    long long total() const;
};

struct ClassReport {
    struct Row {
        int class_index = 0;
        double label = 0.0;
        double precision = 0.0;
        double recall = 0.0;
        double f1 = 0.0;
        long long support = 0;    // gold count
        long long predicted = 0;  // prediction count
    };
    std::vector<Row> rows;  // classes with support or predictions
    double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
    double weighted_precision = 0.0, weighted_recall = 0.0, weighted_f1 = 0.0;
    double micro_f1 = 0.0;
    double accuracy = 0.0;
    long long total = 0;
    int supported_classes = 0;  // macro averages run over these
};

// Single-label evaluation. Precision/recall/F1 use the 0/0 -> 0 convention;
// macro averages cover classes with support > 0 only.
ClassReport report_from_confusion(const ConfusionMatrix& cm, const LabelSpace& space);

struct Evaluation {
    ClassReport report;
    ConfusionMatrix confusion{0};
};

Evaluation evaluate(const std::vector<int>& gold_idx, const std::vector<int>& pred_idx,
                    const LabelSpace& space);
Evaluation evaluate_values(const std::vector<double>& golds, const std::vector<double>& preds,
                           const LabelSpace& space);

struct PartitionedEvaluation {
    Evaluation covered;    // items the rule-based voter labeled
    Evaluation abstained;  // items it abstained on
    long long covered_count = 0;
    long long abstained_count = 0;
    std::string note;  // set when a partition is empty
};

PartitionedEvaluation partitioned_eval(const std::vector<int>& gold_idx,
                                       const std::vector<int>& pred_idx,
                                       const std::vector<int>& rb_votes,
                                       const LabelSpace& space);

ordered_json report_to_json(const ClassReport& report, const LabelSpace& space);
std::string render_report_text(const ClassReport& report, const LabelSpace& space);
std::string confusion_to_csv(const ConfusionMatrix& cm, const LabelSpace& space);

}  // namespace notelab
