#include "notelab/deid.hpp"

#include <algorithm>
#include <cctype>

#include "notelab/corpus.hpp"
#include "notelab/jsonl.hpp"
#include "notelab/tokenizer.hpp"

namespace notelab {

namespace {

const std::array<const char*, kPhiCategoryCount> kCategoryNames = {
    "last_name", "female_first", "male_first",        "phone_fax", "mrn_pid",
    "date_dob",  "time",         "address",           "location_hospital"};

bool is_word_byte(unsigned char c) { return std::isalnum(c) != 0; }

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

std::string to_string(PhiCategory c) {
    return kCategoryNames[static_cast<std::size_t>(c)];
}

PhiCategory phi_category_from_string(const std::string& s) {
    for (int i = 0; i < kPhiCategoryCount; ++i)
        if (s == kCategoryNames[static_cast<std::size_t>(i)]) return static_cast<PhiCategory>(i);
    throw std::invalid_argument("unknown PHI category: " + s);
}

void ReplacementRule::validate_shape() const {
    if (replacement.empty()) throw ConfigError("deid rule: empty replacement");
    for (char c : replacement)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw ConfigError("deid rule: replacement contains whitespace: '" + replacement + "'");
    if (matcher.empty()) throw ConfigError("deid rule: empty matcher");
    if (group < 0) throw ConfigError("deid rule: negative capture group");
}

Ruleset::Ruleset(std::vector<ReplacementRule> rules) : rules_(std::move(rules)) {
    compiled_.resize(rules_.size());
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        rules_[i].validate_shape();
        if (rules_[i].kind == ReplacementRule::Kind::pattern) {
            auto flags = std::regex::ECMAScript | std::regex::optimize;
            if (rules_[i].icase) flags |= std::regex::icase;
            try {
                compiled_[i] = std::regex(rules_[i].matcher, flags);
            } catch (const std::regex_error& e) {
                throw ConfigError("deid rule " + std::to_string(i) + " (" +
                                  to_string(rules_[i].category) + "): bad regex: " + e.what());
            }
        }
    }
}

const std::regex& Ruleset::compiled(std::size_t rule_index) const {
    return compiled_.at(rule_index);
}

Ruleset Ruleset::defaults() {
    using K = ReplacementRule::Kind;
    std::vector<ReplacementRule> rules;
    rules.push_back({PhiCategory::last_name, K::dictionary, "last_names", "Salamanca"});
    rules.push_back({PhiCategory::female_first, K::dictionary, "first_names_f", "Lucie"});
    rules.push_back({PhiCategory::male_first, K::dictionary, "first_names_m", "Ezekiel"});
    rules.push_back({PhiCategory::phone_fax, K::pattern,
                     R"((?:\+?1[-. ])?(?:\(\d{3}\)\s?|\d{3}[-. ])\d{3}[-. ]\d{4}\b)", "1718"});
    rules.push_back({PhiCategory::mrn_pid, K::pattern, R"(\b(?:MRN|PID)\s*[:#]?\s*(\d{4,10})\b)",
                     "999", 1, true});
    rules.push_back(
        {PhiCategory::date_dob, K::pattern, R"(\b\d{1,2}[/-]\d{1,2}[/-]\d{2,4}\b)", "2010s"});
    rules.push_back({PhiCategory::date_dob, K::pattern, R"(\b\d{4}-\d{2}-\d{2}\b)", "2010s"});
    rules.push_back({PhiCategory::date_dob, K::pattern,
                     R"(\b(?:January|February|March|April|May|June|July|August|September|October|November|December|Jan|Feb|Mar|Apr|Jun|Jul|Aug|Sept?|Oct|Nov|Dec)\.?\s+\d{1,2}(?:st|nd|rd|th)?(?:,?\s+\d{4})?\b)",
                     "2010s", 0, true});
    rules.push_back({PhiCategory::time, K::pattern,
                     R"(\b\d{1,2}:\d{2}(?::\d{2})?(?:\s?[ap]\.?m\.?)?\b)", "1610", 0, true});
    rules.push_back({PhiCategory::address, K::pattern,
                     R"(\b\d{1,5}\s+(?:[A-Z][a-z]+\s+){1,2}(?:Street|St|Avenue|Ave|Road|Rd|Drive|Dr|Boulevard|Blvd|Lane|Ln|Crescent|Court|Way)\b)",
                     "Silesia"});
    rules.push_back({PhiCategory::location_hospital, K::pattern,
                     R"((?:[A-Z][A-Za-z.']*\s+){1,4}(?:Hospital|Clinics?|Medical\s+Cent(?:re|er)|Health\s+Centre|Rehabilitation\s+Institute|Infirmary)\b)",
                     "Troy"});
    return Ruleset(std::move(rules));
}

namespace {

struct Candidate {
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t rule_index = 0;
};

void collect_dictionary_hits(const std::string& text, const std::set<std::string>& entries,
                             std::size_t rule_index, std::vector<Candidate>& out) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (!std::isalpha(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
        if (entries.count(lower(text.substr(i, j - i)))) out.push_back({i, j, rule_index});
        i = j;
    }
}

void collect_pattern_hits(const std::string& text, const std::regex& re, int group,
                          std::size_t rule_index, std::vector<Candidate>& out) {
    auto begin = std::sregex_iterator(text.begin(), text.end(), re);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const std::smatch& m = *it;
        const int g = group < static_cast<int>(m.size()) ? group : 0;
        if (!m[static_cast<std::size_t>(g)].matched) continue;
        const auto start = static_cast<std::size_t>(m.position(static_cast<std::size_t>(g)));
        const auto len = static_cast<std::size_t>(m.length(static_cast<std::size_t>(g)));
        if (len == 0) continue;
        out.push_back({start, start + len, rule_index});
    }
}

}  // namespace

DeidResult deidentify(const std::string& text, const Ruleset& ruleset,
                      const DeidDictionaries& dictionaries) {
    const auto& rules = ruleset.rules();
    std::vector<Candidate> candidates;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        if (rules[r].kind == ReplacementRule::Kind::dictionary) {
            auto it = dictionaries.find(rules[r].matcher);
            if (it == dictionaries.end())
                throw std::runtime_error("deid: missing dictionary '" + rules[r].matcher + "'");
            collect_dictionary_hits(text, it->second, r, candidates);
        } else {
            collect_pattern_hits(text, ruleset.compiled(r), rules[r].group, r, candidates);
        }
    }

    // a hit that is already the replacement token stays put; this is what
    // makes the pass idempotent
    std::erase_if(candidates, [&](const Candidate& c) {
        return lower(text.substr(c.start, c.end - c.start)) ==
               lower(rules[c.rule_index].replacement);
    });

    // longest match wins, then leftmost, then rule order
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        const std::size_t la = a.end - a.start, lb = b.end - b.start;
        if (la != lb) return la > lb;
        if (a.start != b.start) return a.start < b.start;
        return a.rule_index < b.rule_index;
    });
    std::vector<Candidate> selected;
    for (const Candidate& c : candidates) {
        bool overlaps = false;
        for (const Candidate& s : selected) {
            if (c.start < s.end && s.start < c.end) {
                overlaps = true;
                break;
            }
        }
        if (!overlaps) selected.push_back(c);
    }
    std::sort(selected.begin(), selected.end(),
              [](const Candidate& a, const Candidate& b) { return a.start < b.start; });

    DeidResult result;
    std::size_t pos = 0;
    for (const Candidate& c : selected) {
        const ReplacementRule& rule = rules[c.rule_index];
        result.clean_text.append(text, pos, c.start - pos);
        result.clean_text += rule.replacement;
        pos = c.end;
        result.report.counts[rule.category]++;
        result.report.spans.push_back({rule.category, c.start, c.end, c.end - c.start});
    }
    result.clean_text.append(text, pos, std::string::npos);
    return result;
}

std::vector<RuleValidation> validate_ruleset(const Ruleset& ruleset, const Vocab& vocab,
                                             const std::vector<Note>& source_corpus) {
    std::vector<std::string> lowered;
    lowered.reserve(source_corpus.size());
    for (const Note& n : source_corpus) lowered.push_back(lower(n.text));

    std::vector<RuleValidation> out;
    for (std::size_t r = 0; r < ruleset.rules().size(); ++r) {
        const ReplacementRule& rule = ruleset.rules()[r];
        RuleValidation v;
        v.rule_index = r;
        v.category = rule.category;
        v.replacement = rule.replacement;

        const std::vector<int> ids = wordpiece_tokenize(rule.replacement, vocab, true);
        v.token_count = static_cast<int>(ids.size());
        v.single_token = ids.size() == 1 && ids[0] != vocab.unk_id();

        const std::string needle = lower(rule.replacement);
        bool found = false;
        for (const std::string& t : lowered) {
            std::size_t pos = 0;
            while (!found && (pos = t.find(needle, pos)) != std::string::npos) {
                const bool left_ok =
                    pos == 0 || !is_word_byte(static_cast<unsigned char>(t[pos - 1]));
                const std::size_t end = pos + needle.size();
                const bool right_ok =
                    end == t.size() || !is_word_byte(static_cast<unsigned char>(t[end]));
                if (left_ok && right_ok) found = true;
                ++pos;
            }
            if (found) break;
        }
        v.absent_from_corpus = !found;
        out.push_back(std::move(v));
    }
    return out;
}

DeidDictionaries load_dictionaries(const std::map<std::string, std::string>& name_to_path) {
    DeidDictionaries dicts;
    for (const auto& [name, path] : name_to_path) {
        std::set<std::string> entries;
        for (const std::string& line : read_lines(path)) {
            if (line.empty()) continue;
            entries.insert(lower(line));
        }
        if (entries.empty()) throw std::runtime_error("deid: empty dictionary file: " + path);
        dicts[name] = std::move(entries);
    }
    return dicts;
}

DeidDictionaries builtin_dictionaries() {
    DeidDictionaries dicts;
    for (const auto& [name, list] :
         std::initializer_list<std::pair<const char*, const std::vector<std::string>*>>{
             {"first_names_f", &builtin_female_first_names()},
             {"first_names_m", &builtin_male_first_names()},
             {"last_names", &builtin_last_names()}}) {
        std::set<std::string> entries;
        for (const auto& w : *list) entries.insert(lower(w));
        dicts[name] = std::move(entries);
    }
    return dicts;
}

}  // namespace notelab
