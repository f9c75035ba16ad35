#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "notelab/types.hpp"

namespace notelab {

class Vocab;

struct GeneratorConfig {
    int n_patients = 100;
    std::array<int, 2> notes_per_patient_range = {1, 6};
    std::uint64_t seed = 0;
    // expected number of extra PHI sentences per note beyond the header
    double phi_density = 1.0;
    // per-class sampling weights over edss_space; empty = uniform
    std::vector<double> edss_distribution;
    // probability a note states the EDSS verbatim rather than describing it
    double explicit_edss_fraction = 0.88;
    // fraction of notes whose findings are pushed past a long history section
    double late_cue_fraction = 0.0;
    int late_cue_prefix_words = 700;
    // fraction of remaining notes given an extended history so some exceed
    // one context window
    double long_note_fraction = 0.25;
    LabelSpace edss_space = LabelSpace::default_edss();
    int subscore_max = 6;

    void validate() const;
};

struct GeneratedCorpus {
    std::vector<Note> notes;
    std::map<std::string, GoldLabels> labels;
};

GeneratedCorpus generate_corpus(const GeneratorConfig& config);

// Name/place dictionaries the generator draws PHI from. Exposed so the
// de-identification defaults can be written out to match.
const std::vector<std::string>& builtin_female_first_names();
const std::vector<std::string>& builtin_male_first_names();
const std::vector<std::string>& builtin_last_names();

// Vocabulary covering the generator lexicon plus single-character fallback
// pieces, so synthetic corpora tokenize without [UNK].
Vocab build_generator_vocab();

struct SplitRatios {
    double train = 0.5;
    double validation = 0.2;
    double test = 0.3;
};

// Gender-stratified splitter. patient_contained allocates whole patients by
// patient count; chronological allocates each patient's date-ordered notes
// train -> validation -> test by note count.
SplitAssignment split_corpus(const std::vector<Note>& notes, const SplitRatios& ratios,
                             SplitMode mode, std::uint64_t seed);

void save_notes(const std::filesystem::path& path, const std::vector<Note>& notes);
std::vector<Note> load_notes(const std::filesystem::path& path);

void save_labels(const std::filesystem::path& path,
                 const std::map<std::string, GoldLabels>& labels,
                 const std::string& provenance = "gold");
std::map<std::string, GoldLabels> load_labels(const std::filesystem::path& path);

void save_splits(const std::filesystem::path& path, const SplitAssignment& splits);
SplitAssignment load_splits(const std::filesystem::path& path);

// days since 1970-01-01 <-> ISO yyyy-mm-dd
std::string format_date(std::int64_t days_since_epoch);
std::int64_t parse_date(const std::string& iso);

}  // namespace notelab
