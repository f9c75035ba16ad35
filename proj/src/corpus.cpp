#include "notelab/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "notelab/jsonl.hpp"
#include "notelab/rng.hpp"
#include "notelab/tokenizer.hpp"

namespace notelab {

namespace {

// ---------------------------------------------------------------- lexicon

const std::vector<std::string> kFemaleFirst = {
    "Margaret",  "Eleanor",  "Beatrice",   "Cecilia",  "Dorothea",  "Felicity",
    "Genevieve", "Harriet",  "Imogen",     "Josephine", "Katherine", "Lillian",
    "Miriam",    "Naomi",    "Octavia",    "Penelope", "Rosalind",  "Susannah",
    "Tabitha",   "Ursula",   "Vivian",     "Winifred", "Adelaide",  "Bernadette",
    "Clementine", "Delphine", "Esther",    "Florence", "Gwendolyn", "Henrietta",
    "Isadora",   "Juliet",   "Kathleen",   "Lorraine", "Matilda",   "Nadine",
    "Ophelia",   "Priscilla", "Ramona",    "Sylvia",   "Theodora",  "Veronica",
    "Wilhelmina", "Annabel", "Bridget",    "Cordelia", "Daphne",    "Evangeline",
};

const std::vector<std::string> kMaleFirst = {
    "Albert",    "Bernard",  "Clifford",  "Desmond",   "Edmund",    "Frederick",
    "Gerald",    "Howard",   "Irving",    "Jerome",    "Kenneth",   "Leonard",
    "Maurice",   "Norman",   "Oswald",    "Percival",  "Quentin",   "Reginald",
    "Stanley",   "Theodore", "Vernon",    "Wallace",   "Alfred",    "Barnaby",
    "Cornelius", "Dominic",  "Elliott",   "Ferdinand", "Gregory",   "Horace",
    "Ignatius",  "Jasper",   "Kendall",   "Lionel",    "Montgomery", "Nathaniel",
    "Orville",   "Phineas",  "Randolph",  "Sebastian", "Thaddeus",  "Vincent",
    "Wesley",    "Ambrose",  "Benedict",  "Casper",    "Donovan",   "Emmett",
};

const std::vector<std::string> kLastNames = {
    "Whitfield",  "Ashcroft",   "Pemberton",  "Lockhart",   "Merriweather",
    "Fairbanks",  "Hawthorne",  "Kingsley",   "Lancaster",  "Middleton",
    "Norwood",    "Ogilvie",    "Prescott",   "Quimby",     "Ravenscroft",
    "Sinclair",   "Thornton",   "Underwood",  "Vanderberg", "Wexford",
    "Yardley",    "Abernathy",  "Blackwood",  "Carmichael", "Davenport",
    "Ellsworth",  "Fitzgerald", "Galloway",   "Harrington", "Inglewood",
    "Jefferson",  "Kirkland",   "Livingston", "Macallister", "Northrup",
    "Oakhurst",   "Pennington", "Quarrington", "Rutherford", "Stanhope",
    "Tremblay",   "Upton",      "Vickers",    "Wainwright", "Yates",
    "Zimmerman",  "Beauchamp",  "Crawford",   "Dunmore",    "Eastwood",
    "Farnsworth", "Greenhalgh", "Holloway",   "Irvington",  "Jamieson",
    "Kensington", "Lassiter",   "Morrow",     "Netherton",  "Osborne",
};

const std::vector<std::string> kStreets = {"Maple",   "Birch",    "Cedar",    "Willow",
                                           "Chestnut", "Juniper",  "Magnolia", "Sycamore",
                                           "Poplar",  "Alder"};

const std::vector<std::string> kStreetTypes = {"Street", "Avenue", "Road",
                                               "Drive",  "Lane",   "Crescent"};

const std::vector<std::string> kHospitals = {
    "Riverbend General Hospital",        "Lakeshore Neurology Clinic",
    "Northgate Medical Centre",          "Greenfield Health Centre",
    "Summitview Rehabilitation Institute", "St. Aldric's Hospital",
};

const std::vector<std::string> kMonths = {"January",   "February", "March",    "April",
                                          "May",       "June",     "July",     "August",
                                          "September", "October",  "November", "December"};

const std::vector<std::string> kFiller = {
    "The patient was seen in routine follow up at the multiple sclerosis clinic.",
    "Medications were reviewed and renewed without change.",
    "The disease modifying therapy continues to be well tolerated.",
    "There have been no new relapses since the previous visit.",
    "Imaging of the brain was reviewed and remains stable in appearance.",
    "The patient continues to work part time and manages household activities.",
    "Sleep quality and mood were discussed at length during the visit.",
    "Fatigue remains the most bothersome daily symptom.",
    "Vitamin supplementation was encouraged along with regular exercise.",
    "The patient reports no fevers, infections, or recent hospital admissions.",
    "Blood work from the referring laboratory was unremarkable.",
    "Physiotherapy exercises are being performed at home most days.",
    "Family history was reviewed and is unchanged.",
    "No adverse medication effects were reported today.",
    "The plan and prognosis were discussed with the patient in detail.",
    "A follow up appointment will be arranged in the usual interval.",
    "The patient was counselled regarding heat sensitivity and pacing.",
    "Smoking cessation advice was reinforced.",
    "Diet and hydration habits were reviewed.",
    "The patient declined participation in the research registry at this time.",
    "Driving status was reviewed and remains appropriate.",
    "Immunizations are up to date according to the record.",
    "Occupational therapy input was offered for energy conservation.",
    "Spasticity is managed conservatively with stretching.",
    "The examination was otherwise unremarkable today.",
    "Questions were answered and written information was provided.",
    "Care goals were revisited and remain unchanged.",
    "The patient consented to trainee involvement in the assessment.",
    "Community supports remain in place and adequate.",
    "Symptoms were reviewed system by system without new findings.",
};

// One distinctive description per EDSS class, for notes that never state the
// score verbatim.
const std::vector<std::string> kImplicitEdss = {
    "Neurological examination is entirely normal with no residual deficits.",
    "There is minimal disability with only trace findings on detailed testing.",
    "Trace abnormalities are present across more than one functional domain.",
    "Mild disability is confined to a single functional domain.",
    "Mild disability is apparent in two separate functional domains.",
    "Moderate disability is evident although the patient remains fully ambulatory.",
    "Moderate disability spans several domains yet ambulation remains unrestricted.",
    "The patient remains self sufficient and ambulates unaided for five hundred metres.",
    "The patient walks unaided for roughly three hundred metres before needing rest.",
    "Ambulation without aid is now limited to about two hundred metres.",
    "The patient manages barely one hundred metres without aid or rest.",
    "A single cane is required for walking beyond the home.",
    "Constant bilateral support is needed to cover even twenty metres.",
    "The patient is essentially wheelchair bound though transfers remain independent.",
    "Transfers now require assistance and wheeled mobility is the norm indoors.",
    "The patient is essentially restricted to bed or chair for most of the day.",
    "The patient is restricted to bed much of the day retaining some effective arm use.",
    "The patient is confined to bed and dependent for nearly all self care.",
};

// severity phrases per subscore, index = ordinal level 0..6
const std::vector<std::vector<std::string>> kSubscorePhrases = {
    // ambulation
    {"Gait is normal and brisk without fatigue.",
     "Walking is essentially unrestricted though endurance is mildly reduced.",
     "Gait is noticeably slowed over longer distances.",
     "Walking distance is clearly curtailed and pace is reduced.",
     "Ambulation is laboured and short rests are needed on longer corridors.",
     "Walking requires a mobility aid for any meaningful distance.",
     "Independent ambulation is no longer possible."},
    // bowel_bladder
    {"Bladder and bowel function are reported as normal.",
     "There is mild urinary hesitancy without urgency.",
     "Urinary urgency occurs on most days.",
     "Occasional urge incontinence is reported.",
     "Frequent incontinence requires planned voiding and pads.",
     "Catheterization is needed intermittently for retention.",
     "An indwelling catheter is in place with loss of bowel control."},
    // brain_stem
    {"Extraocular movements are full and speech is clear.",
     "Subtle nystagmus is noted on lateral gaze only.",
     "Moderate nystagmus and mild dysarthria are present.",
     "Prominent nystagmus with noticeable dysarthria is evident.",
     "Marked dysarthria makes speech difficult to follow.",
     "Swallowing difficulties now accompany severe dysarthria.",
     "Speech and swallowing are profoundly impaired."},
    // cerebellar
    {"Coordination testing is smooth and accurate.",
     "Mild intention tremor appears on finger to nose testing.",
     "Mild ataxia is evident on tandem walking.",
     "Moderate truncal ataxia interferes with balance.",
     "Marked limb ataxia disrupts most coordinated tasks.",
     "Severe ataxia prevents reliable reaching and standing.",
     "Coordinated voluntary movement is effectively lost."},
    // mental
    {"Mentation is sharp with no cognitive complaints.",
     "Mood is mildly low but cognition is intact.",
     "Mild memory lapses are reported at work.",
     "Moderate slowing of processing is apparent in conversation.",
     "Marked cognitive impairment affects daily planning.",
     "Significant confusion requires supervision at home.",
     "Profound cognitive decline leaves the patient fully dependent."},
    // pyramidal
    {"Strength is full in all four limbs.",
     "Reflexes are brisk although strength is preserved.",
     "There is mild weakness of hip flexion.",
     "Moderate paraparesis is apparent on examination.",
     "Marked paraparesis limits transfers and stairs.",
     "Severe paraparesis leaves only minimal voluntary movement.",
     "There is functional paraplegia of the lower limbs."},
    // sensory
    {"Sensation is intact to light touch and vibration.",
     "Mild vibration loss is confined to the toes.",
     "Patchy numbness involves the distal lower limbs.",
     "Moderate proprioceptive loss affects both feet.",
     "Marked sensory loss extends above the ankles.",
     "Severe sensory loss involves trunk and limbs.",
     "Sensation is essentially absent below the neck."},
    // visual
    {"Visual acuity is normal in both eyes.",
     "Mild blurring follows exertion but acuity corrects fully.",
     "Acuity is moderately reduced in the worse eye.",
     "A relative scotoma limits reading with the affected eye.",
     "Marked visual loss persists despite correction.",
     "Only coarse shapes are distinguished with the better eye.",
     "The patient is functionally blind for daily purposes."},
};

const std::vector<std::string> kExplicitTemplates = {
    "EDSS is {V}.",
    "EDSS today is {V}.",
    "The current EDSS is {V}.",
    "An EDSS score of {V} was assigned.",
    "Overall EDSS remains {V}.",
};

const std::vector<std::string> kRomanNumerals = {"i",  "ii", "iii", "iv", "v",
                                                 "vi", "vii", "viii", "ix", "x"};

std::string format_edss(double v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
    return s;
}

int count_words(const std::string& s) {
    int n = 0;
    bool in_word = false;
    for (char c : s) {
        const bool sp = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (!sp && !in_word) ++n;
        in_word = !sp;
    }
    return n;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    return v[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(v.size()) - 1))];
}

// ------------------------------------------------------------- calendar

// Howard Hinnant's civil-from-days algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

std::string render_date(Rng& rng, std::int64_t days) {
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    switch (rng.uniform_int(0, 2)) {
        case 0:
            std::snprintf(buf, sizeof(buf), "%02d/%02d/%04d", m, d, y);
            return buf;
        case 1:
            std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
            return buf;
        default:
            std::snprintf(buf, sizeof(buf), "%s %d, %04d",
                          kMonths[static_cast<std::size_t>(m - 1)].c_str(), d, y);
            return buf;
    }
}

std::string render_time(Rng& rng) {
    const int h = static_cast<int>(rng.uniform_int(8, 17));
    const int mi = static_cast<int>(rng.uniform_int(0, 11)) * 5;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%d:%02d", h, mi);
    return buf;
}

std::string render_phone(Rng& rng) {
    static const std::vector<std::string> areas = {"416", "647", "905", "613", "705"};
    const int exch = static_cast<int>(rng.uniform_int(210, 980));
    const int last4 = static_cast<int>(rng.uniform_int(2000, 9899));
    char buf[24];
    if (rng.bernoulli(0.3))
        std::snprintf(buf, sizeof(buf), "(%s) %03d-%04d", pick(rng, areas).c_str(), exch, last4);
    else
        std::snprintf(buf, sizeof(buf), "%s-%03d-%04d", pick(rng, areas).c_str(), exch, last4);
    return buf;
}

std::string render_mrn(Rng& rng) {
    return std::to_string(rng.uniform_int(100000, 9999999));
}

std::string render_address(Rng& rng) {
    return std::to_string(rng.uniform_int(1, 299)) + " " + pick(rng, kStreets) + " " +
           pick(rng, kStreetTypes);
}

}  // namespace

const std::vector<std::string>& builtin_female_first_names() { return kFemaleFirst; }
const std::vector<std::string>& builtin_male_first_names() { return kMaleFirst; }
const std::vector<std::string>& builtin_last_names() { return kLastNames; }

std::string format_date(std::int64_t days_since_epoch) {
    int y, m, d;
    civil_from_days(days_since_epoch, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

std::int64_t parse_date(const std::string& iso) {
    int y = 0, m = 0, d = 0;
    if (std::sscanf(iso.c_str(), "%d-%d-%d", &y, &m, &d) != 3 || m < 1 || m > 12 || d < 1 ||
        d > 31)
        throw std::invalid_argument("bad ISO date: " + iso);
    return days_from_civil(y, m, d);
}

void GeneratorConfig::validate() const {
    if (n_patients < 1) throw ConfigError("generator: n_patients must be >= 1");
    if (notes_per_patient_range[0] < 1 ||
        notes_per_patient_range[1] < notes_per_patient_range[0])
        throw ConfigError("generator: bad notes_per_patient_range");
    if (phi_density < 0.0) throw ConfigError("generator: phi_density must be >= 0");
    auto frac = [](double f) { return f >= 0.0 && f <= 1.0; };
    if (!frac(explicit_edss_fraction))
        throw ConfigError("generator: explicit_edss_fraction must be in [0,1]");
    if (!frac(late_cue_fraction)) throw ConfigError("generator: late_cue_fraction must be in [0,1]");
    if (!frac(long_note_fraction)) throw ConfigError("generator: long_note_fraction must be in [0,1]");
    edss_space.validate();
    if (!edss_distribution.empty()) {
        if (static_cast<int>(edss_distribution.size()) != edss_space.size())
            throw ConfigError("generator: edss_distribution size must match label space");
        double sum = 0.0;
        for (double w : edss_distribution) {
            if (w < 0.0) throw ConfigError("generator: edss_distribution weights must be >= 0");
            sum += w;
        }
        if (sum <= 0.0) throw ConfigError("generator: edss_distribution must have positive mass");
    }
    if (subscore_max < 1) throw ConfigError("generator: subscore_max must be >= 1");
}

GeneratedCorpus generate_corpus(const GeneratorConfig& config) {
    config.validate();
    Rng rng(config.seed);
    GeneratedCorpus out;

    std::vector<double> class_weights = config.edss_distribution;
    if (class_weights.empty())
        class_weights.assign(static_cast<std::size_t>(config.edss_space.size()), 1.0);

    const double subscore_scale =
        static_cast<double>(config.subscore_max) /
        std::max(1.0, config.edss_space.values.back());

    for (int p = 0; p < config.n_patients; ++p) {
        char pid[16];
        std::snprintf(pid, sizeof(pid), "P%04d", p + 1);
        const Gender gender = rng.bernoulli(0.72) ? Gender::F : Gender::M;
        const std::string first =
            gender == Gender::F ? pick(rng, kFemaleFirst) : pick(rng, kMaleFirst);
        const std::string last = pick(rng, kLastNames);
        const std::string pron = gender == Gender::F ? "She" : "He";

        const int n_notes = static_cast<int>(rng.uniform_int(
            config.notes_per_patient_range[0], config.notes_per_patient_range[1]));
        std::int64_t visit_days =
            days_from_civil(2015, 1, 1) + rng.uniform_int(0, 1460);

        for (int k = 0; k < n_notes; ++k) {
            Note note;
            char nid[24];
            std::snprintf(nid, sizeof(nid), "%s-%02d", pid, k + 1);
            note.note_id = nid;
            note.patient_id = pid;
            note.gender = gender;
            note.visit_date = format_date(visit_days);

            const int cls = static_cast<int>(rng.categorical(class_weights));
            const double edss = config.edss_space.values[static_cast<std::size_t>(cls)];

            GoldLabels gold;
            gold.edss = edss;
            for (std::size_t s = 0; s < kSubscoreCount; ++s) {
                const double sigma = s == 0 ? 0.4 : 0.8;  // ambulation tracks EDSS closely
                const int level = std::clamp(
                    static_cast<int>(std::lround(edss * subscore_scale + rng.normal(0, sigma))),
                    0, config.subscore_max);
                gold.subscores[all_subscores()[s]] = level;
            }

            std::vector<std::string> sentences;

            // header with embedded PHI
            const std::string doctor = pick(rng, kLastNames);
            const std::string hospital = pick(rng, kHospitals);
            const std::string date_str = render_date(rng, visit_days);
            const std::string time_str = render_time(rng);
            if (rng.bernoulli(0.5))
                sentences.push_back("Dr. " + doctor + " saw " + first + " " + last +
                                    " in follow up on " + date_str + " at " + time_str +
                                    " at " + hospital + ".");
            else
                sentences.push_back(first + " " + last + " was assessed by Dr. " + doctor +
                                    " on " + date_str + " at " + time_str + " at " + hospital +
                                    ".");

            // extra PHI sentences
            int extra = static_cast<int>(std::floor(config.phi_density));
            if (rng.bernoulli(config.phi_density - std::floor(config.phi_density))) ++extra;
            for (int e = 0; e < extra; ++e) {
                switch (rng.uniform_int(0, 6)) {
                    case 0:
                        sentences.push_back("The patient can be reached at " + render_phone(rng) +
                                            ".");
                        break;
                    case 1:
                        sentences.push_back("A copy of this letter was faxed to " +
                                            render_phone(rng) + ".");
                        break;
                    case 2:
                        sentences.push_back("MRN " + render_mrn(rng) +
                                            " was confirmed at registration.");
                        break;
                    case 3:
                        sentences.push_back(pron + " lives at " + render_address(rng) +
                                            " and remains independent in the community.");
                        break;
                    case 4:
                        sentences.push_back("A review is booked for " +
                                            render_date(rng, visit_days + rng.uniform_int(30, 200)) +
                                            ".");
                        break;
                    case 5:
                        sentences.push_back("Records were requested from " + pick(rng, kHospitals) +
                                            ".");
                        break;
                    default:
                        sentences.push_back("The file was copied to Dr. " + pick(rng, kLastNames) +
                                            ".");
                        break;
                }
            }

            // history filler; late-cue notes bury the findings behind a long
            // history section, long notes get an extended one
            const bool late_cue = rng.bernoulli(config.late_cue_fraction);
            int history_sentences = static_cast<int>(rng.uniform_int(2, 6));
            if (!late_cue && rng.bernoulli(config.long_note_fraction))
                history_sentences += static_cast<int>(rng.uniform_int(35, 60));
            int words_so_far = 0;
            for (const auto& s : sentences) words_so_far += count_words(s);
            for (int f = 0; f < history_sentences; ++f) {
                const std::string& s = pick(rng, kFiller);
                sentences.push_back(s);
                words_so_far += count_words(s);
            }
            if (late_cue) {
                while (words_so_far < config.late_cue_prefix_words) {
                    const std::string& s = pick(rng, kFiller);
                    sentences.push_back(s);
                    words_so_far += count_words(s);
                }
            }

            // examination findings per subscore
            for (std::size_t s = 0; s < kSubscoreCount; ++s) {
                const int level = gold.subscores[all_subscores()[s]];
                const auto& phrases = kSubscorePhrases[s];
                const int idx = std::min<int>(level, static_cast<int>(phrases.size()) - 1);
                sentences.push_back(phrases[static_cast<std::size_t>(idx)]);
            }

            // assessment: verbatim score or a descriptive equivalent
            const bool explicit_stmt = rng.bernoulli(config.explicit_edss_fraction);
            if (explicit_stmt) {
                const bool integral = std::abs(edss - std::round(edss)) < 1e-9;
                const int whole = static_cast<int>(std::lround(edss));
                if (integral && whole >= 1 && whole <= 9 && rng.bernoulli(0.12)) {
                    sentences.push_back(
                        "EDSS of " + kRomanNumerals[static_cast<std::size_t>(whole - 1)] +
                        ", stable.");
                } else {
                    sentences.push_back(
                        replace_all(pick(rng, kExplicitTemplates), "{V}", format_edss(edss)));
                }
                gold.edss_statement = "explicit";
            } else {
                sentences.push_back(kImplicitEdss[static_cast<std::size_t>(
                    config.edss_space.size() == static_cast<int>(kImplicitEdss.size())
                        ? cls
                        : cls * static_cast<int>(kImplicitEdss.size()) /
                              config.edss_space.size())]);
                gold.edss_statement = "implicit";
            }
            if (rng.bernoulli(0.5)) sentences.push_back(pick(rng, kFiller));

            std::string text;
            for (std::size_t s = 0; s < sentences.size(); ++s) {
                if (s) text += ' ';
                text += sentences[s];
            }
            note.text = std::move(text);

            out.labels[note.note_id] = std::move(gold);
            out.notes.push_back(std::move(note));
            visit_days += rng.uniform_int(30, 240);
        }
    }
    return out;
}

Vocab build_generator_vocab() {
    std::set<std::string> words;
    auto add_text = [&](const std::string& s) {
        for (auto& w : basic_words(s, true))
            if (w.size() > 1) words.insert(w);  // single chars are always present
    };
    for (const auto& v : {kFemaleFirst, kMaleFirst, kLastNames, kStreets, kStreetTypes,
                          kHospitals, kMonths, kFiller, kImplicitEdss, kExplicitTemplates,
                          kRomanNumerals})
        for (const auto& s : v) add_text(s);
    for (const auto& group : kSubscorePhrases)
        for (const auto& s : group) add_text(s);
    add_text("Dr saw in follow up on at was assessed by The patient can be reached at A copy of "
             "this letter was faxed to MRN was confirmed at registration lives at and remains "
             "independent in the community A review is booked for Records were requested from "
             "The file was copied to stable today");
    // de-identification replacement tokens must stay single subword tokens
    for (const char* t : {"salamanca", "lucie", "ezekiel", "1718", "999", "2010s", "1610",
                          "silesia", "troy"})
        words.insert(t);

    std::vector<std::string> tokens = {"[PAD]", "[UNK]", "[CLS]", "[SEP]"};
    const std::string chars = "abcdefghijklmnopqrstuvwxyz0123456789";
    const std::string punct = ".,:;'\"()/-?!#&%+=[]*@_";
    for (char c : chars) tokens.push_back(std::string(1, c));
    for (char c : punct) tokens.push_back(std::string(1, c));
    for (char c : chars) tokens.push_back("##" + std::string(1, c));
    for (const auto& w : words) tokens.push_back(w);
    return Vocab::from_tokens(std::move(tokens));
}

// ----------------------------------------------------------------- split

namespace {

// running largest-remainder allocation; keeps every split within one unit of
// its cumulative target
struct RunningAllocator {
    std::array<double, 3> target{};
    std::array<double, 3> assigned{};

    std::array<int, 3> take(int weight, const std::array<double, 3>& ratios) {
        std::array<double, 3> want{};
        std::array<int, 3> cnt{};
        int total = 0;
        for (int s = 0; s < 3; ++s) {
            target[s] += weight * ratios[s];
            want[s] = target[s] - assigned[s];
            cnt[s] = std::max(0, static_cast<int>(std::floor(want[s])));
            total += cnt[s];
        }
        while (total < weight) {
            int best = -1;
            double best_frac = -1e300;
            for (int s = 0; s < 3; ++s) {
                const double frac = want[s] - cnt[s];
                if (frac > best_frac + 1e-12) {
                    best_frac = frac;
                    best = s;
                }
            }
            ++cnt[best];
            ++total;
        }
        while (total > weight) {
            int best = -1;
            double best_frac = 1e300;
            for (int s = 0; s < 3; ++s) {
                if (cnt[s] == 0) continue;
                const double frac = want[s] - cnt[s];
                if (frac < best_frac) {
                    best_frac = frac;
                    best = s;
                }
            }
            --cnt[best];
            --total;
        }
        for (int s = 0; s < 3; ++s) assigned[s] += cnt[s];
        return cnt;
    }
};

struct PatientGroup {
    std::string patient_id;
    Gender gender = Gender::F;
    std::vector<const Note*> notes;  // chronological
};

}  // namespace

SplitAssignment split_corpus(const std::vector<Note>& notes, const SplitRatios& ratios,
                             SplitMode mode, std::uint64_t seed) {
    if (notes.empty()) throw ConfigError("split: empty corpus");
    const std::array<double, 3> r = {ratios.train, ratios.validation, ratios.test};
    double sum = 0.0;
    for (double x : r) {
        if (x < 0.0) throw ConfigError("split: ratios must be >= 0");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("split: ratios must sum to 1");

    std::map<std::string, PatientGroup> by_patient;
    for (const Note& n : notes) {
        auto& g = by_patient[n.patient_id];
        if (g.notes.empty()) {
            g.patient_id = n.patient_id;
            g.gender = n.gender;
        }
        g.notes.push_back(&n);
    }
    for (auto& [_, g] : by_patient) {
        std::sort(g.notes.begin(), g.notes.end(), [](const Note* a, const Note* b) {
            if (a->visit_date != b->visit_date) return a->visit_date < b->visit_date;
            return a->note_id < b->note_id;  // deterministic tie-break
        });
    }

    SplitAssignment out;
    out.mode = mode;
    Rng rng(seed);
    static const Split kSplits[3] = {Split::train, Split::validation, Split::test};

    for (Gender gender : {Gender::F, Gender::M}) {
        std::vector<PatientGroup*> stratum;
        for (auto& [_, g] : by_patient)
            if (g.gender == gender) stratum.push_back(&g);
        if (stratum.empty()) continue;
        rng.shuffle(stratum);

        RunningAllocator alloc;
        std::array<long, 3> stratum_units{};
        for (PatientGroup* g : stratum) {
            if (mode == SplitMode::patient_contained) {
                const auto cnt = alloc.take(1, r);
                for (int s = 0; s < 3; ++s) {
                    if (cnt[s] == 0) continue;
                    for (const Note* n : g->notes) out.by_note[n->note_id] = kSplits[s];
                    stratum_units[s] += 1;
                }
            } else {
                const auto cnt = alloc.take(static_cast<int>(g->notes.size()), r);
                std::size_t pos = 0;
                for (int s = 0; s < 3; ++s) {
                    for (int k = 0; k < cnt[s]; ++k)
                        out.by_note[g->notes[pos++]->note_id] = kSplits[s];
                    stratum_units[s] += cnt[s];
                }
            }
        }
        for (int s = 0; s < 3; ++s) {
            if (r[s] > 0.0 && stratum_units[s] == 0)
                out.warnings.push_back("stratum " + to_string(gender) + ": split " +
                                       to_string(kSplits[s]) +
                                       " received no units (stratum too small)");
        }
    }
    return out;
}

// ------------------------------------------------------------------- io

void save_notes(const std::filesystem::path& path, const std::vector<Note>& notes) {
    std::vector<ordered_json> records;
    records.reserve(notes.size());
    for (const Note& n : notes) {
        ordered_json j;
        j["note_id"] = n.note_id;
        j["patient_id"] = n.patient_id;
        j["gender"] = to_string(n.gender);
        j["visit_date"] = n.visit_date;
        j["text"] = n.text;
        records.push_back(std::move(j));
    }
    write_jsonl(path, records);
}

std::vector<Note> load_notes(const std::filesystem::path& path) {
    std::vector<Note> notes;
    std::set<std::string> seen;
    for (const auto& j : read_jsonl(path)) {
        Note n;
        n.note_id = j.at("note_id").get<std::string>();
        n.patient_id = j.at("patient_id").get<std::string>();
        n.gender = gender_from_string(j.at("gender").get<std::string>());
        n.visit_date = j.at("visit_date").get<std::string>();
        n.text = j.at("text").get<std::string>();
        if (!seen.insert(n.note_id).second)
            throw std::runtime_error("duplicate note_id: " + n.note_id);
        parse_date(n.visit_date);  // must be parseable
        if (n.text.empty()) throw std::runtime_error("empty text for note " + n.note_id);
        notes.push_back(std::move(n));
    }
    return notes;
}

void save_labels(const std::filesystem::path& path,
                 const std::map<std::string, GoldLabels>& labels,
                 const std::string& provenance) {
    std::vector<ordered_json> records;
    records.reserve(labels.size());
    for (const auto& [note_id, gold] : labels) {
        ordered_json j;
        j["note_id"] = note_id;
        if (gold.edss)
            j["edss"] = *gold.edss;
        else
            j["edss"] = nullptr;
        ordered_json subs = ordered_json::object();
        for (const auto& [name, value] : gold.subscores) subs[to_string(name)] = value;
        j["subscores"] = std::move(subs);
        if (gold.edss_statement) j["edss_statement"] = *gold.edss_statement;
        if (provenance != "gold") j["provenance"] = provenance;
        records.push_back(std::move(j));
    }
    write_jsonl(path, records);
}

std::map<std::string, GoldLabels> load_labels(const std::filesystem::path& path) {
    std::map<std::string, GoldLabels> labels;
    for (const auto& j : read_jsonl(path)) {
        GoldLabels g;
        if (j.contains("edss") && !j.at("edss").is_null()) g.edss = j.at("edss").get<double>();
        if (j.contains("subscores"))
            for (const auto& [k, v] : j.at("subscores").items())
                g.subscores[subscore_from_string(k)] = v.get<int>();
        if (j.contains("edss_statement"))
            g.edss_statement = j.at("edss_statement").get<std::string>();
        labels[j.at("note_id").get<std::string>()] = std::move(g);
    }
    return labels;
}

void save_splits(const std::filesystem::path& path, const SplitAssignment& splits) {
    std::vector<ordered_json> records;
    records.reserve(splits.by_note.size());
    for (const auto& [note_id, split] : splits.by_note) {
        ordered_json j;
        j["note_id"] = note_id;
        j["split"] = to_string(split);
        records.push_back(std::move(j));
    }
    write_jsonl(path, records);
}

SplitAssignment load_splits(const std::filesystem::path& path) {
    SplitAssignment out;
    for (const auto& j : read_jsonl(path))
        out.by_note[j.at("note_id").get<std::string>()] =
            split_from_string(j.at("split").get<std::string>());
    return out;
}

}  // namespace notelab
