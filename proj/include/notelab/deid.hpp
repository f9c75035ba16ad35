#pragma once

#include <array>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "notelab/types.hpp"

namespace notelab {

class Vocab;
struct Note;

enum class PhiCategory {
    last_name,
    female_first,
    male_first,
    phone_fax,
    mrn_pid,
    date_dob,
    time,
    address,
    location_hospital,
};

inline constexpr int kPhiCategoryCount = 9;
std::string to_string(PhiCategory c);
PhiCategory phi_category_from_string(const std::string& s);

struct ReplacementRule {
    PhiCategory category = PhiCategory::last_name;
    enum class Kind { dictionary, pattern } kind = Kind::pattern;
    std::string matcher;     // dictionary name or ECMAScript regex
    std::string replacement;  // single in-vocabulary token, no whitespace
    int group = 0;            // capture group replaced; 0 = whole match
    bool icase = false;

    void validate_shape() const;
};

// dictionary name -> lowercased entries
using DeidDictionaries = std::map<std::string, std::set<std::string>>;

class Ruleset {
public:
    explicit Ruleset(std::vector<ReplacementRule> rules);
    const std::vector<ReplacementRule>& rules() const { return rules_; }
    const std::regex& compiled(std::size_t rule_index) const;

    static Ruleset defaults();

private:
    std::vector<ReplacementRule> rules_;
    std::vector<std::regex> compiled_;  // aligned; unused slots for dictionary rules
};

struct DeidSpan {
    PhiCategory category;
    std::size_t start = 0;  // offsets into the original text
    std::size_t end = 0;
    std::size_t original_length = 0;
};

struct DeidReport {
    std::map<PhiCategory, std::size_t> counts;
    std::vector<DeidSpan> spans;
    std::size_t total() const { return spans.size(); }
};

struct DeidResult {
    std::string clean_text;
    DeidReport report;
};

// Replaces every dictionary and pattern hit with its category token. Matches
// whose text already equals the replacement are left alone, which makes the
// pass idempotent. Overlaps resolve longest match first, then leftmost, then
// rule order.
DeidResult deidentify(const std::string& text, const Ruleset& ruleset,
                      const DeidDictionaries& dictionaries);

struct RuleValidation {
    std::size_t rule_index = 0;
    PhiCategory category = PhiCategory::last_name;
    std::string replacement;
    bool single_token = false;  // criterion 1
    int token_count = 0;
    std::string semantic = "manual";  // criterion 2 is not machine-checkable
    bool absent_from_corpus = false;  // criterion 3
    bool ok() const { return single_token && absent_from_corpus; }
};

std::vector<RuleValidation> validate_ruleset(const Ruleset& ruleset, const Vocab& vocab,
                                             const std::vector<Note>& source_corpus);

DeidDictionaries load_dictionaries(const std::map<std::string, std::string>& name_to_path);

// dictionaries matching the synthetic generator's name tables
DeidDictionaries builtin_dictionaries();

}  // namespace notelab
