#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace notelab {

enum class Gender { F, M };

std::string to_string(Gender g);
Gender gender_from_string(const std::string& s);

enum class Subscore {
    ambulation,
    bowel_bladder,
    brain_stem,
    cerebellar,
    mental,
    pyramidal,
    sensory,
    visual,
};

inline constexpr int kSubscoreCount = 8;
const std::array<Subscore, kSubscoreCount>& all_subscores();
std::string to_string(Subscore s);
Subscore subscore_from_string(const std::string& s);

struct Note {
    std::string note_id;
    std::string patient_id;
    Gender gender = Gender::F;
    std::string visit_date;  // ISO-8601 yyyy-mm-dd
    std::string text;
};

// Ordered set of class values; class index = position.
struct LabelSpace {
    std::vector<double> values;

    int size() const { return static_cast<int>(values.size()); }

    // -1 when the value is not in the space
    int index_of(double v, double eps = 1e-9) const {
        for (int i = 0; i < size(); ++i)
            if (std::abs(values[i] - v) <= eps) return i;
        return -1;
    }

    double value_of(int index) const {
        if (index < 0 || index >= size())
            throw std::out_of_range("LabelSpace: class index out of range");
        return values[static_cast<std::size_t>(index)];
    }

    void validate() const;

    static LabelSpace default_edss();
    static LabelSpace ordinal(int max_value);  // {0, 1, ..., max_value}
};

struct GoldLabels {
    std::optional<double> edss;
    std::map<Subscore, int> subscores;
    // how the generator expressed the EDSS in text: "explicit" or "implicit"
    std::optional<std::string> edss_statement;
};

enum class Split { train, validation, test };

std::string to_string(Split s);
Split split_from_string(const std::string& s);

enum class SplitMode { patient_contained, chronological };

std::string to_string(SplitMode m);
SplitMode split_mode_from_string(const std::string& s);

struct SplitAssignment {
    std::map<std::string, Split> by_note;
    SplitMode mode = SplitMode::patient_contained;
    std::vector<std::string> warnings;
};

// Explicit non-vote of a labeling function; never a valid class index.
inline constexpr int kAbstain = -1;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace notelab
