#include "notelab/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace notelab {

namespace {

double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string fmt_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

long long ConfusionMatrix::total() const {
    long long t = 0;
    for (long long c : counts) t += c;
    return t;
}

ClassReport report_from_confusion(const ConfusionMatrix& cm, const LabelSpace& space) {
    if (cm.k != space.size())
        throw std::invalid_argument("report_from_confusion: label space size mismatch");
    ClassReport rep;
    rep.total = cm.total();

    long long correct = 0;
    double weighted_p = 0.0, weighted_r = 0.0, weighted_f = 0.0;
    long long weight_total = 0;

    for (int c = 0; c < cm.k; ++c) {
        const long long tp = cm.at(c, c);
        long long fp = 0, fn = 0;
        for (int o = 0; o < cm.k; ++o) {
            if (o == c) continue;
            fp += cm.at(o, c);
            fn += cm.at(c, o);
        }
        correct += tp;
        const long long support = tp + fn;
        const long long predicted = tp + fp;
        if (support == 0 && predicted == 0) continue;

        ClassReport::Row row;
        row.class_index = c;
        row.label = space.values[static_cast<std::size_t>(c)];
        row.precision = safe_div(static_cast<double>(tp), static_cast<double>(tp + fp));
        row.recall = safe_div(static_cast<double>(tp), static_cast<double>(tp + fn));
        row.f1 = safe_div(2.0 * row.precision * row.recall, row.precision + row.recall);
        row.support = support;
        row.predicted = predicted;
        rep.rows.push_back(row);

        if (support > 0) {
            ++rep.supported_classes;
            rep.macro_precision += row.precision;
            rep.macro_recall += row.recall;
            rep.macro_f1 += row.f1;
            weighted_p += row.precision * static_cast<double>(support);
            weighted_r += row.recall * static_cast<double>(support);
            weighted_f += row.f1 * static_cast<double>(support);
            weight_total += support;
        }
    }

    if (rep.supported_classes > 0) {
        rep.macro_precision /= rep.supported_classes;
        rep.macro_recall /= rep.supported_classes;
        rep.macro_f1 /= rep.supported_classes;
    }
    if (weight_total > 0) {
        weighted_p /= static_cast<double>(weight_total);
        weighted_r /= static_cast<double>(weight_total);
        weighted_f /= static_cast<double>(weight_total);
    }
    rep.weighted_precision = weighted_p;
    rep.weighted_recall = weighted_r;
    rep.weighted_f1 = weighted_f;

    // single-label: every item contributes one FP and one FN when wrong
    const double tp_all = static_cast<double>(correct);
    const double fpfn = static_cast<double>(rep.total - correct) * 2.0;
    rep.micro_f1 = safe_div(tp_all, tp_all + 0.5 * fpfn);
    rep.accuracy = safe_div(tp_all, static_cast<double>(rep.total));
    return rep;
}

Evaluation evaluate(const std::vector<int>& gold_idx, const std::vector<int>& pred_idx,
                    const LabelSpace& space) {
    if (gold_idx.size() != pred_idx.size())
        throw std::invalid_argument("evaluate: gold/pred length mismatch (" +
                                    std::to_string(gold_idx.size()) + " vs " +
                                    std::to_string(pred_idx.size()) + ")");
    Evaluation ev;
    ev.confusion = ConfusionMatrix(space.size());
    for (std::size_t i = 0; i < gold_idx.size(); ++i) {
        const int g = gold_idx[i], p = pred_idx[i];
        if (g < 0 || g >= space.size() || p < 0 || p >= space.size())
            throw std::invalid_argument("evaluate: label index outside the label space at item " +
                                        std::to_string(i));
        ev.confusion.at(g, p)++;
    }
    ev.report = report_from_confusion(ev.confusion, space);
    return ev;
}

Evaluation evaluate_values(const std::vector<double>& golds, const std::vector<double>& preds,
                           const LabelSpace& space) {
    std::vector<int> g, p;
    g.reserve(golds.size());
    p.reserve(preds.size());
    for (double v : golds) {
        const int idx = space.index_of(v);
        if (idx < 0)
            throw std::invalid_argument("evaluate: gold value " + fmt_label(v) +
                                        " not in label space");
        g.push_back(idx);
    }
    for (double v : preds) {
        const int idx = space.index_of(v);
        if (idx < 0)
            throw std::invalid_argument("evaluate: predicted value " + fmt_label(v) +
                                        " not in label space");
        p.push_back(idx);
    }
    return evaluate(g, p, space);
}

PartitionedEvaluation partitioned_eval(const std::vector<int>& gold_idx,
                                       const std::vector<int>& pred_idx,
                                       const std::vector<int>& rb_votes,
                                       const LabelSpace& space) {
    if (rb_votes.size() != gold_idx.size())
        throw std::invalid_argument("partitioned_eval: rb_votes length mismatch");
    std::vector<int> g_cov, p_cov, g_abs, p_abs;
    for (std::size_t i = 0; i < gold_idx.size(); ++i) {
        if (rb_votes[i] == kAbstain) {
            g_abs.push_back(gold_idx[i]);
            p_abs.push_back(pred_idx[i]);
        } else {
            g_cov.push_back(gold_idx[i]);
            p_cov.push_back(pred_idx[i]);
        }
    }
    PartitionedEvaluation out;
    out.covered_count = static_cast<long long>(g_cov.size());
    out.abstained_count = static_cast<long long>(g_abs.size());
    if (!g_cov.empty()) out.covered = evaluate(g_cov, p_cov, space);
    if (!g_abs.empty()) out.abstained = evaluate(g_abs, p_abs, space);
    if (g_cov.empty()) out.note = "covered partition is empty";
    if (g_abs.empty()) out.note = "abstained partition is empty";
    return out;
}

ordered_json report_to_json(const ClassReport& report, const LabelSpace& space) {
    ordered_json j;
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.rows) {
        ordered_json row;
        row["label"] = space.values[static_cast<std::size_t>(r.class_index)];
        row["precision"] = r.precision;
        row["recall"] = r.recall;
        row["f1"] = r.f1;
        row["support"] = r.support;
        row["predicted"] = r.predicted;
        rows.push_back(std::move(row));
    }
    j["classes"] = std::move(rows);
    j["macro"] = {{"precision", report.macro_precision},
                  {"recall", report.macro_recall},
                  {"f1", report.macro_f1}};
    j["weighted"] = {{"precision", report.weighted_precision},
                     {"recall", report.weighted_recall},
                     {"f1", report.weighted_f1}};
    j["micro_f1"] = report.micro_f1;
    j["accuracy"] = report.accuracy;
    j["total"] = report.total;
    j["supported_classes"] = report.supported_classes;
    return j;
}

std::string render_report_text(const ClassReport& report, const LabelSpace& space) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-14s %10s %10s %10s %10s\n", "Label", "Precision",
                  "Recall", "F1", "Support");
    out += line;
    for (const auto& r : report.rows) {
        std::snprintf(line, sizeof(line), "%-14s %10s %10s %10s %10lld\n",
                      fmt_label(space.values[static_cast<std::size_t>(r.class_index)]).c_str(),
                      fmt4(r.precision).c_str(), fmt4(r.recall).c_str(), fmt4(r.f1).c_str(),
                      r.support);
        out += line;
    }
    std::snprintf(line, sizeof(line), "%-14s %10s %10s %10s %10lld\n", "Mean",
                  fmt4(report.macro_precision).c_str(), fmt4(report.macro_recall).c_str(),
                  fmt4(report.macro_f1).c_str(), report.total);
    out += line;
    std::snprintf(line, sizeof(line), "%-14s %10s %10s %10s %10lld\n", "Weighted Mean",
                  fmt4(report.weighted_precision).c_str(), fmt4(report.weighted_recall).c_str(),
                  fmt4(report.weighted_f1).c_str(), report.total);
    out += line;
    return out;
}

std::string confusion_to_csv(const ConfusionMatrix& cm, const LabelSpace& space) {
    std::string out;
    for (int c = 0; c < cm.k; ++c) {
        if (c) out += ',';
        out += fmt_label(space.values[static_cast<std::size_t>(c)]);
    }
    out += '\n';
    for (int g = 0; g < cm.k; ++g) {
        for (int p = 0; p < cm.k; ++p) {
            if (p) out += ',';
            out += std::to_string(cm.at(g, p));
        }
        out += '\n';
    }
    return out;
}

}  // namespace notelab
