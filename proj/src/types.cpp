#include "notelab/types.hpp"

#include <cmath>

namespace notelab {

std::string to_string(Gender g) { return g == Gender::F ? "F" : "M"; }

Gender gender_from_string(const std::string& s) {
    if (s == "F") return Gender::F;
    if (s == "M") return Gender::M;
    throw std::invalid_argument("unknown gender: " + s);
}

const std::array<Subscore, kSubscoreCount>& all_subscores() {
    static const std::array<Subscore, kSubscoreCount> names = {
        Subscore::ambulation, Subscore::bowel_bladder, Subscore::brain_stem,
        Subscore::cerebellar, Subscore::mental,        Subscore::pyramidal,
        Subscore::sensory,    Subscore::visual,
    };
    return names;
}

std::string to_string(Subscore s) {
    switch (s) {
        case Subscore::ambulation: return "ambulation";
        case Subscore::bowel_bladder: return "bowel_bladder";
        case Subscore::brain_stem: return "brain_stem";
        case Subscore::cerebellar: return "cerebellar";
        case Subscore::mental: return "mental";
        case Subscore::pyramidal: return "pyramidal";
        case Subscore::sensory: return "sensory";
        case Subscore::visual: return "visual";
    }
    throw std::invalid_argument("bad subscore enum");
}

Subscore subscore_from_string(const std::string& s) {
    for (Subscore sub : all_subscores())
        if (to_string(sub) == s) return sub;
    throw std::invalid_argument("unknown subscore: " + s);
}

void LabelSpace::validate() const {
    if (values.empty()) throw std::invalid_argument("LabelSpace: empty");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument("LabelSpace: values must be strictly increasing");
}

LabelSpace LabelSpace::default_edss() {
    return LabelSpace{{0.0, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0, 6.5, 7.0,
                       7.5, 8.0, 8.5, 9.0}};
}

LabelSpace LabelSpace::ordinal(int max_value) {
    LabelSpace ls;
    for (int v = 0; v <= max_value; ++v) ls.values.push_back(static_cast<double>(v));
    return ls;
}

std::string to_string(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::validation: return "validation";
        case Split::test: return "test";
    }
    throw std::invalid_argument("bad split enum");
}

Split split_from_string(const std::string& s) {
    if (s == "train") return Split::train;
    if (s == "validation") return Split::validation;
    if (s == "test") return Split::test;
    throw std::invalid_argument("unknown split: " + s);
}

std::string to_string(SplitMode m) {
    return m == SplitMode::patient_contained ? "patient_contained" : "chronological";
}

SplitMode split_mode_from_string(const std::string& s) {
    if (s == "patient_contained") return SplitMode::patient_contained;
    if (s == "chronological") return SplitMode::chronological;
    throw std::invalid_argument("unknown split mode: " + s);
}

}  // namespace notelab
