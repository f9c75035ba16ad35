#include "notelab/labeling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>

#include "notelab/corpus.hpp"
#include "notelab/jsonl.hpp"
#include "notelab/tokenizer.hpp"

namespace notelab {

namespace {

int roman_value(const std::string& w) {
    static const std::map<std::string, int> romans = {
        {"i", 1},  {"ii", 2},  {"iii", 3}, {"iv", 4}, {"v", 5},
        {"vi", 6}, {"vii", 7}, {"viii", 8}, {"ix", 9}, {"x", 10}};
    auto it = romans.find(w);
    return it == romans.end() ? 0 : it->second;
}

bool parse_decimal(const std::string& w, double& out) {
    if (w.empty()) return false;
    bool dot = false;
    for (char c : w) {
        if (c == '.') {
            if (dot) return false;
            dot = true;
        } else if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    if (w == ".") return false;
    out = std::stod(w);
    return true;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

struct RbWord {
    std::string raw;      // stripped of surrounding punctuation
    std::string lowered;
};

// whitespace-delimited words with surrounding punctuation stripped, except
// that interior dots are kept so decimal scores survive intact
std::vector<RbWord> rb_words(const std::string& text) {
    std::vector<RbWord> words;
    std::string cur;
    auto strip = [](std::string w) {
        auto is_punct = [](char c) {
            return c == '.' || c == ',' || c == ';' || c == ':' || c == '(' || c == ')' ||
                   c == '?' || c == '!' || c == '"' || c == '\'';
        };
        while (!w.empty() && is_punct(w.front())) w.erase(w.begin());
        while (!w.empty() && is_punct(w.back())) w.pop_back();
        return w;
    };
    auto flush = [&] {
        std::string w = strip(cur);
        cur.clear();
        if (!w.empty()) words.push_back({w, lower(w)});
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)))
            flush();
        else
            cur += c;
    }
    flush();
    return words;
}

}  // namespace

int rb_extract_edss(const std::string& text, const LabelSpace& space, const RbConfig& config) {
    const std::vector<RbWord> words = rb_words(text);
    // (word position, class index) candidates, deduplicated by position
    std::map<std::size_t, int> candidates;
    std::map<std::size_t, std::size_t> distance;  // position -> closest keyword distance

    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].lowered != "edss") continue;
        const std::size_t lo = i >= static_cast<std::size_t>(config.window)
                                   ? i - static_cast<std::size_t>(config.window)
                                   : 0;
        const std::size_t hi =
            std::min(words.size(), i + static_cast<std::size_t>(config.window) + 1);
        for (std::size_t j = lo; j < hi; ++j) {
            if (j == i) continue;
            double value = 0.0;
            bool has = false;
            if (parse_decimal(words[j].raw, value)) {
                has = true;
            } else if (words[j].raw == words[j].lowered) {
                // romans read only in lowercase; "I" as a pronoun is not 1.0
                if (const int rv = roman_value(words[j].raw); rv > 0) {
                    value = static_cast<double>(rv);
                    has = true;
                }
            }
            if (!has) continue;
            const int cls = space.index_of(value);
            if (cls < 0) continue;
            const std::size_t dist = j > i ? j - i : i - j;
            auto it = candidates.find(j);
            if (it == candidates.end()) {
                candidates[j] = cls;
                distance[j] = dist;
            } else {
                distance[j] = std::min(distance[j], dist);
            }
        }
    }
    if (candidates.empty()) return kAbstain;
    if (config.strategy == RbStrategy::last_occurrence) return candidates.rbegin()->second;
    std::size_t best_pos = candidates.begin()->first;
    std::size_t best_dist = distance[best_pos];
    for (const auto& [pos, _] : candidates) {
        if (distance[pos] < best_dist) {
            best_dist = distance[pos];
            best_pos = pos;
        }
    }
    return candidates[best_pos];
}

// --------------------------------------------------------------- tf-idf

namespace {

std::map<std::string, int> term_counts(const std::string& text) {
    std::map<std::string, int> counts;
    for (const auto& w : basic_words(text, true)) {
        if (w.size() == 1 && !std::isalnum(static_cast<unsigned char>(w[0])))
            continue;  // bare punctuation carries no signal
        counts[w]++;
    }
    return counts;
}

Eigen::VectorXd featurize(const TfidfModel& model, const std::string& text) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.vocabulary.size()));
    for (const auto& [term, count] : term_counts(text)) {
        auto it = model.term_to_col.find(term);
        if (it == model.term_to_col.end()) continue;
        x[it->second] = count * model.idf[static_cast<std::size_t>(it->second)];
    }
    const double norm = x.norm();
    if (norm > 0.0) x /= norm;
    return x;
}

}  // namespace

TfidfModel tfidf_fit(const std::vector<std::string>& train_texts,
                     const std::vector<int>& train_labels, int n_classes,
                     const TfidfFitConfig& config) {
    if (train_texts.empty()) throw std::invalid_argument("tfidf_fit: empty training set");
    if (train_texts.size() != train_labels.size())
        throw std::invalid_argument("tfidf_fit: texts/labels length mismatch");
    if (n_classes < 2) throw std::invalid_argument("tfidf_fit: need at least 2 classes");

    const auto n = static_cast<Eigen::Index>(train_texts.size());

    // rank terms by total corpus frequency, ties alphabetical
    std::map<std::string, long long> corpus_freq;
    std::map<std::string, long long> doc_freq;
    std::vector<std::map<std::string, int>> doc_terms(train_texts.size());
    for (std::size_t i = 0; i < train_texts.size(); ++i) {
        doc_terms[i] = term_counts(train_texts[i]);
        for (const auto& [term, count] : doc_terms[i]) {
            corpus_freq[term] += count;
            doc_freq[term] += 1;
        }
    }
    std::vector<std::pair<std::string, long long>> ranked(corpus_freq.begin(), corpus_freq.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (static_cast<int>(ranked.size()) > config.max_features)
        ranked.resize(static_cast<std::size_t>(config.max_features));

    TfidfModel model;
    model.n_classes = n_classes;
    for (const auto& [term, _] : ranked) {
        model.term_to_col[term] = static_cast<int>(model.vocabulary.size());
        model.vocabulary.push_back(term);
    }
    const auto f = static_cast<Eigen::Index>(model.vocabulary.size());
    model.idf.resize(static_cast<std::size_t>(f));
    for (Eigen::Index c = 0; c < f; ++c) {
        const double df = static_cast<double>(doc_freq[model.vocabulary[static_cast<std::size_t>(c)]]);
        model.idf[static_cast<std::size_t>(c)] =
            std::log((1.0 + static_cast<double>(n)) / (1.0 + df)) + 1.0;
    }

    Eigen::MatrixXd x(n, f);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd row = Eigen::VectorXd::Zero(f);
        for (const auto& [term, count] : doc_terms[static_cast<std::size_t>(i)]) {
            auto it = model.term_to_col.find(term);
            if (it == model.term_to_col.end()) continue;
            row[it->second] = count * model.idf[static_cast<std::size_t>(it->second)];
        }
        const double norm = row.norm();
        if (norm > 0.0) row /= norm;
        x.row(i) = row;
    }

    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n_classes);
    model.class_counts.assign(static_cast<std::size_t>(n_classes), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int label = train_labels[static_cast<std::size_t>(i)];
        if (label < 0 || label >= n_classes)
            throw std::invalid_argument("tfidf_fit: label outside [0,K) at item " +
                                        std::to_string(i));
        y(i, label) = 1.0;
        model.class_counts[static_cast<std::size_t>(label)]++;
    }
    model.prior_argmax = static_cast<int>(
        std::max_element(model.class_counts.begin(), model.class_counts.end()) -
        model.class_counts.begin());

    // full-batch gradient descent on softmax cross-entropy with l2 penalty
    const double lambda = 1.0 / config.inverse_reg_strength;
    const double lr = 1.5;  // rows are unit norm, so the loss is 0.5+lambda smooth
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(f, n_classes);
    Eigen::RowVectorXd b = Eigen::RowVectorXd::Zero(n_classes);
    for (int iter = 0; iter < config.max_iters; ++iter) {
        Eigen::MatrixXd logits = (x * w).rowwise() + b;
        Eigen::VectorXd row_max = logits.rowwise().maxCoeff();
        Eigen::MatrixXd p = (logits.colwise() - row_max).array().exp();
        Eigen::VectorXd denom = p.rowwise().sum();
        p.array().colwise() /= denom.array();

        Eigen::MatrixXd delta = (p - y) / static_cast<double>(n);
        Eigen::MatrixXd gw = x.transpose() * delta + lambda * w;
        Eigen::RowVectorXd gb = delta.colwise().sum();

        const double ginf = std::max(gw.cwiseAbs().maxCoeff(), gb.cwiseAbs().maxCoeff());
        if (ginf < config.grad_tol) break;
        w -= lr * gw;
        b -= lr * gb;
    }

    model.weights.assign(static_cast<std::size_t>(f),
                         std::vector<double>(static_cast<std::size_t>(n_classes), 0.0));
    for (Eigen::Index i = 0; i < f; ++i)
        for (int c = 0; c < n_classes; ++c)
            model.weights[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = w(i, c);
    model.bias.assign(static_cast<std::size_t>(n_classes), 0.0);
    for (int c = 0; c < n_classes; ++c) model.bias[static_cast<std::size_t>(c)] = b(c);
    return model;
}

int tfidf_predict(const TfidfModel& model, const std::string& text) {
    const Eigen::VectorXd x = featurize(model, text);
    if (x.norm() == 0.0) return model.prior_argmax;
    int best = 0;
    double best_score = -1e300;
    for (int c = 0; c < model.n_classes; ++c) {
        double score = model.bias[static_cast<std::size_t>(c)];
        for (Eigen::Index i = 0; i < x.size(); ++i)
            score += x[i] * model.weights[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
        if (score > best_score) {
            best_score = score;
            best = c;
        }
    }
    return best;
}

void TfidfModel::save(const std::filesystem::path& path) const {
    ordered_json j;
    j["format"] = "notelab-tfidf-v1";
    j["n_classes"] = n_classes;
    j["vocabulary"] = vocabulary;
    j["idf"] = idf;
    j["weights"] = weights;
    j["bias"] = bias;
    j["class_counts"] = class_counts;
    j["prior_argmax"] = prior_argmax;
    atomic_write(path, j.dump(2) + "\n");
}

TfidfModel TfidfModel::load(const std::filesystem::path& path) {
    const json j = json::parse(read_text_file(path));
    if (j.value("format", "") != "notelab-tfidf-v1")
        throw std::runtime_error("tfidf model: unrecognized format in " + path.string());
    TfidfModel m;
    m.n_classes = j.at("n_classes").get<int>();
    m.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    m.idf = j.at("idf").get<std::vector<double>>();
    m.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    m.bias = j.at("bias").get<std::vector<double>>();
    m.class_counts = j.at("class_counts").get<std::vector<long long>>();
    m.prior_argmax = j.at("prior_argmax").get<int>();
    for (std::size_t i = 0; i < m.vocabulary.size(); ++i)
        m.term_to_col[m.vocabulary[i]] = static_cast<int>(i);
    return m;
}

// ------------------------------------------------------------ vote matrix

VoteMatrix apply_lfs(const std::vector<Note>& notes, const std::vector<RegisteredLf>& lfs,
                     std::vector<std::string>* warnings) {
    VoteMatrix m;
    for (const auto& lf : lfs) m.lf_names.push_back(lf.name);
    m.votes.reserve(notes.size());
    for (const Note& note : notes) {
        m.note_ids.push_back(note.note_id);
        std::vector<int> row;
        row.reserve(lfs.size());
        for (const auto& lf : lfs) {
            int vote = kAbstain;
            try {
                vote = lf.fn(note);
            } catch (const std::exception& e) {
                if (warnings)
                    warnings->push_back("LF '" + lf.name + "' failed on " + note.note_id + ": " +
                                        e.what());
                vote = kAbstain;
            }
            row.push_back(vote);
        }
        m.votes.push_back(std::move(row));
    }
    return m;
}

void save_votes(const std::filesystem::path& path, const VoteMatrix& votes) {
    std::vector<ordered_json> records;
    records.reserve(votes.n_items());
    for (std::size_t i = 0; i < votes.n_items(); ++i) {
        ordered_json j;
        j["note_id"] = votes.note_ids[i];
        ordered_json v = ordered_json::object();
        for (std::size_t c = 0; c < votes.n_lfs(); ++c) v[votes.lf_names[c]] = votes.votes[i][c];
        j["votes"] = std::move(v);
        records.push_back(std::move(j));
    }
    write_jsonl(path, records);
}

VoteMatrix load_votes(const std::filesystem::path& path) {
    VoteMatrix m;
    for (const auto& j : read_jsonl(path)) {
        if (m.lf_names.empty())
            for (const auto& [name, _] : j.at("votes").items()) m.lf_names.push_back(name);
        m.note_ids.push_back(j.at("note_id").get<std::string>());
        std::vector<int> row;
        for (const auto& name : m.lf_names) row.push_back(j.at("votes").at(name).get<int>());
        m.votes.push_back(std::move(row));
    }
    return m;
}

}  // namespace notelab
