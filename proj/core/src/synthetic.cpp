#include "transit/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "transit/errors.hpp"

namespace transit {

namespace {

struct Word {
  std::string_view surface;
  std::string_view lemma;
  std::string_view upos;
};

struct Verb {
  std::string_view lemma;
  std::string_view past;
  std::string_view participle;
};

// Subjects that the shipped human-agent lexicon recognizes.
constexpr std::array<std::array<Word, 2>, 8> kHumans = {{
    {{{"the", "the", "DET"}, {"nurse", "nurse", "NOUN"}}},
    {{{"the", "the", "DET"}, {"doctor", "doctor", "NOUN"}}},
    {{{"the", "the", "DET"}, {"patient", "patient", "NOUN"}}},
    {{{"", "", ""}, {"Betty", "Betty", "PROPN"}}},
    {{{"", "", ""}, {"John", "John", "PROPN"}}},
    {{{"", "", ""}, {"I", "I", "PRON"}}},
    {{{"", "", ""}, {"she", "she", "PRON"}}},
    {{{"", "", ""}, {"he", "he", "PRON"}}},
}};
constexpr std::size_t kNominalHumans = 5;  // usable after "by"

constexpr std::array<Word, 6> kBodyParts = {{{"hands", "hand", "NOUN"},
                                             {"eyes", "eye", "NOUN"},
                                             {"shoulders", "shoulder", "NOUN"},
                                             {"fingers", "finger", "NOUN"},
                                             {"arms", "arm", "NOUN"},
                                             {"head", "head", "NOUN"}}};

constexpr std::array<Word, 10> kThings = {
    {{"file", "file", "NOUN"},      {"chart", "chart", "NOUN"},
     {"door", "door", "NOUN"},      {"folder", "folder", "NOUN"},
     {"note", "note", "NOUN"},      {"report", "report", "NOUN"},
     {"letter", "letter", "NOUN"},  {"phone", "phone", "NOUN"},
     {"clipboard", "clipboard", "NOUN"}, {"pamphlet", "pamphlet", "NOUN"}}};

constexpr std::array<Verb, 10> kMaterialVerbs = {{{"touch", "touched", "touched"},
                                                  {"grab", "grabbed", "grabbed"},
                                                  {"push", "pushed", "pushed"},
                                                  {"move", "moved", "moved"},
                                                  {"lift", "lifted", "lifted"},
                                                  {"hold", "held", "held"},
                                                  {"carry", "carried", "carried"},
                                                  {"reach", "reached", "reached"},
                                                  {"open", "opened", "opened"},
                                                  {"shake", "shook", "shaken"}}};

constexpr std::array<Verb, 7> kMentalVerbs = {{{"notice", "noticed", "noticed"},
                                               {"watch", "watched", "watched"},
                                               {"sense", "sensed", "sensed"},
                                               {"feel", "felt", "felt"},
                                               {"see", "saw", "seen"},
                                               {"remember", "remembered", "remembered"},
                                               {"recognize", "recognized", "recognized"}}};

constexpr std::array<Verb, 4> kOtherVerbs = {{{"have", "had", "had"},
                                              {"need", "needed", "needed"},
                                              {"want", "wanted", "wanted"},
                                              {"lack", "lacked", "lacked"}}};

constexpr std::array<std::string_view, 5> kAdjectives = {"calm", "quiet", "ready",
                                                         "nervous", "tired"};

constexpr std::array<std::string_view, 8> kMedicalTerms = {
    "statin",     "cholesterol", "diagnosis", "prescription",
    "bloodwork",  "medication",  "treatment", "dosage"};

// Three extroversion cues and three confidence cues.
constexpr std::array<std::string_view, 4> kFlourish = {
    "confidently", "boldly", "enthusiastically", "certainly"};

enum class Kind : std::uint8_t {
  kHumanActor,      // the nurse touched the file
  kBodyPart,        // her hands touched the file
  kBodyPartTwin,    // touched her hands the file (no subject, same words)
  kInanimateActor,  // the chart touched the file
  kGoal,            // she was touched
  kAgentPassive,    // the file was touched by the nurse
  kOtherProcess,    // the nurse had the file
  kCopula,          // the nurse was calm
};
constexpr std::size_t kKindCount = 8;

enum class Process : std::uint8_t { kMaterial, kMental, kNone };

struct Template {
  Kind kind;
  Process process;
  bool flourish;
  FeatureVector gold;  // without tone/medical add-ons beyond the flourish
  double base_weight;
};

bool kind_has_process(Kind k) {
  return k != Kind::kOtherProcess && k != Kind::kCopula;
}

FeatureVector gold_for(Kind kind, Process process, bool flourish) {
  FeatureVector v;
  const bool passive = kind == Kind::kGoal || kind == Kind::kAgentPassive;
  v[Feature::kActive] = !passive;
  v[Feature::kPassive] = passive;
  v[Feature::kMaterial] = process == Process::kMaterial;
  v[Feature::kMental] = process == Process::kMental;
  v[Feature::kHumanActor] = kind == Kind::kHumanActor;
  v[Feature::kBodyPart] = kind == Kind::kBodyPart;
  v[Feature::kInanimateActor] =
      kind == Kind::kInanimateActor || kind == Kind::kAgentPassive;
  v[Feature::kGoal] = kind == Kind::kGoal;
  v[Feature::kEnergetic] = flourish;
  v[Feature::kStatic] = !flourish;
  return v;
}

// The subjectless twin shares its bag of words with the body-part template,
// so only construction features tell them apart.
double kind_weight(Kind k) {
  return k == Kind::kBodyPartTwin ? 0.25 : 0.75 / static_cast<double>(kKindCount - 1);
}

constexpr double kFlourishRate = 0.25;

const std::vector<Template>& templates() {
  static const std::vector<Template> all = [] {
    std::vector<Template> out;
    for (std::size_t k = 0; k < kKindCount; ++k) {
      const Kind kind = static_cast<Kind>(k);
      std::vector<Process> processes;
      if (kind_has_process(kind))
        processes = {Process::kMaterial, Process::kMental};
      else
        processes = {Process::kNone};
      for (Process p : processes) {
        for (bool flourish : {false, true}) {
          const double w = kind_weight(kind) / static_cast<double>(processes.size()) *
                           (flourish ? kFlourishRate : 1.0 - kFlourishRate);
          out.push_back({kind, p, flourish, gold_for(kind, p, flourish), w});
        }
      }
    }
    return out;
  }();
  return all;
}

class SentenceBuilder {
 public:
  int add(std::string_view surface, std::string_view lemma, std::string_view upos,
          int head, std::string_view deprel) {
    Token t;
    t.index = static_cast<int>(tokens_.size()) + 1;
    t.surface = surface;
    t.lemma = lemma;
    t.upos = upos;
    t.head = head;
    t.deprel = deprel;
    tokens_.push_back(std::move(t));
    return tokens_.back().index;
  }
  Token& at(int index) { return tokens_.at(static_cast<std::size_t>(index - 1)); }
  int next_index() const { return static_cast<int>(tokens_.size()) + 1; }

  Sentence finish(std::string id) {
    Sentence s;
    s.sentence_id = std::move(id);
    if (!tokens_.empty() && !tokens_.front().surface.empty())
      tokens_.front().surface[0] = static_cast<char>(
          std::toupper(static_cast<unsigned char>(tokens_.front().surface[0])));
    std::string text;
    for (const auto& t : tokens_) {
      if (!text.empty() && t.upos != "PUNCT") text += ' ';
      text += t.surface;
    }
    s.raw_text = std::move(text);
    s.tokens = std::move(tokens_);
    validate_sentence(s);
    return s;
  }

 private:
  std::vector<Token> tokens_;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  template <typename Array>
  const auto& pick(const Array& items) {
    std::uniform_int_distribution<std::size_t> d(0, items.size() - 1);
    return items[d(rng_)];
  }
  std::size_t below(std::size_t n) {
    std::uniform_int_distribution<std::size_t> d(0, n - 1);
    return d(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double normal(double sd) {
    return sd > 0.0 ? std::normal_distribution<double>(0.0, sd)(rng_) : 0.0;
  }
  std::size_t weighted(const std::vector<double>& weights) {
    std::discrete_distribution<std::size_t> d(weights.begin(), weights.end());
    return d(rng_);
  }

 private:
  std::mt19937_64 rng_;
};

// Adds an optional determiner + noun; returns the noun's index.
int add_human(SentenceBuilder& b, const std::array<Word, 2>& h, int head,
              std::string_view deprel) {
  const bool has_det = !h[0].surface.empty();
  const int noun = b.next_index() + (has_det ? 1 : 0);
  if (has_det) b.add(h[0].surface, h[0].lemma, h[0].upos, noun, "det");
  b.add(h[1].surface, h[1].lemma, h[1].upos, head, deprel);
  return noun;
}

SyntheticSentence build_sentence(const Template& tpl, std::size_t template_id,
                                 Sampler& rng, bool medical, std::string id) {
  SentenceBuilder b;
  const Verb* verb = nullptr;
  if (tpl.process == Process::kMaterial) verb = &rng.pick(kMaterialVerbs);
  if (tpl.process == Process::kMental) verb = &rng.pick(kMentalVerbs);

  int root = 0;
  switch (tpl.kind) {
    case Kind::kHumanActor: {
      const auto& h = rng.pick(kHumans);
      const int subj_pos = b.next_index() + (h[0].surface.empty() ? 0 : 1);
      root = subj_pos + 1;
      add_human(b, h, root, "nsubj");
      b.add(verb->past, verb->lemma, "VERB", 0, "root");
      const auto& t = rng.pick(kThings);
      b.add("the", "the", "DET", root + 2, "det");
      b.add(t.surface, t.lemma, t.upos, root, "obj");
      break;
    }
    case Kind::kBodyPart: {
      const auto& bp = rng.pick(kBodyParts);
      const auto& t = rng.pick(kThings);
      b.add("her", "she", "PRON", 2, "nmod:poss");
      b.add(bp.surface, bp.lemma, bp.upos, 3, "nsubj");
      root = b.add(verb->past, verb->lemma, "VERB", 0, "root");
      b.add("the", "the", "DET", 5, "det");
      b.add(t.surface, t.lemma, t.upos, root, "obj");
      break;
    }
    case Kind::kBodyPartTwin: {
      const auto& bp = rng.pick(kBodyParts);
      const auto& t = rng.pick(kThings);
      root = b.add(verb->past, verb->lemma, "VERB", 0, "root");
      b.add("her", "she", "PRON", 3, "nmod:poss");
      b.add(bp.surface, bp.lemma, bp.upos, root, "obl");
      b.add("the", "the", "DET", 5, "det");
      b.add(t.surface, t.lemma, t.upos, root, "obj");
      break;
    }
    case Kind::kInanimateActor: {
      const auto& a = rng.pick(kThings);
      const auto& t = rng.pick(kThings);
      b.add("the", "the", "DET", 2, "det");
      b.add(a.surface, a.lemma, a.upos, 3, "nsubj");
      root = b.add(verb->past, verb->lemma, "VERB", 0, "root");
      b.add("the", "the", "DET", 5, "det");
      b.add(t.surface, t.lemma, t.upos, root, "obj");
      break;
    }
    case Kind::kGoal: {
      const auto& h = rng.pick(kHumans);
      const int subj_pos = b.next_index() + (h[0].surface.empty() ? 0 : 1);
      root = subj_pos + 2;
      add_human(b, h, root, "nsubj:pass");
      b.add("was", "be", "AUX", root, "aux:pass");
      b.add(verb->participle, verb->lemma, "VERB", 0, "root");
      break;
    }
    case Kind::kAgentPassive: {
      const auto& t = rng.pick(kThings);
      const auto& h = kHumans[rng.below(kNominalHumans)];
      b.add("the", "the", "DET", 2, "det");
      b.add(t.surface, t.lemma, t.upos, 4, "nsubj:pass");
      b.add("was", "be", "AUX", 4, "aux:pass");
      root = b.add(verb->participle, verb->lemma, "VERB", 0, "root");
      const bool has_det = !h[0].surface.empty();
      const int noun = b.next_index() + 1 + (has_det ? 1 : 0);
      b.add("by", "by", "ADP", noun, "case");
      add_human(b, h, root, "obl:agent");
      break;
    }
    case Kind::kOtherProcess: {
      const auto& h = rng.pick(kHumans);
      const auto& v = rng.pick(kOtherVerbs);
      const int subj_pos = b.next_index() + (h[0].surface.empty() ? 0 : 1);
      root = subj_pos + 1;
      add_human(b, h, root, "nsubj");
      b.add(v.past, v.lemma, "VERB", 0, "root");
      const auto& t = rng.pick(kThings);
      b.add("the", "the", "DET", root + 2, "det");
      b.add(t.surface, t.lemma, t.upos, root, "obj");
      break;
    }
    case Kind::kCopula: {
      const auto& h = rng.pick(kHumans);
      const auto adj = rng.pick(kAdjectives);
      const int subj_pos = b.next_index() + (h[0].surface.empty() ? 0 : 1);
      root = subj_pos + 2;
      add_human(b, h, root, "nsubj");
      b.add("was", "be", "AUX", root, "cop");
      b.add(adj, adj, "ADJ", 0, "root");
      break;
    }
  }
  if (medical) {
    const auto term = rng.pick(kMedicalTerms);
    const int noun = b.next_index() + 2;
    b.add("about", "about", "ADP", noun, "case");
    b.add("the", "the", "DET", noun, "det");
    b.add(term, term, "NOUN", root, "obl");
  }
  if (tpl.flourish)
    for (auto adv : kFlourish) b.add(adv, adv, "ADV", root, "advmod");
  b.add(".", ".", "PUNCT", root, "punct");

  SyntheticSentence out;
  out.sentence = b.finish(std::move(id));
  out.gold_features = tpl.gold;
  out.gold_medical = medical;
  out.template_id = template_id;
  out.sentence.metadata.emplace_back("gold_features", tpl.gold.to_bitstring());
  out.sentence.metadata.emplace_back("gold_medical", medical ? "1" : "0");
  out.sentence.metadata.emplace_back("template", std::to_string(template_id));
  return out;
}

std::vector<double> base_weights() {
  std::vector<double> w;
  for (const auto& t : templates()) w.push_back(t.base_weight);
  return w;
}

// Template choice for an empathic sentence under a signal: with probability
// equal to the strongest strength, pick a signalled feature (weighted by
// strength) and a template exhibiting it; otherwise use the base weights.
std::size_t pick_template(Sampler& rng, bool empathic, const SignalSpec& signal) {
  static const std::vector<double> base = base_weights();
  double strongest = 0.0;
  for (const auto& [f, s] : signal) strongest = std::max(strongest, s);
  if (!empathic || strongest <= 0.0 || !rng.chance(strongest))
    return rng.weighted(base);
  std::vector<Feature> features;
  std::vector<double> strengths;
  for (const auto& [f, s] : signal) {
    if (s <= 0.0) continue;
    features.push_back(f);
    strengths.push_back(s);
  }
  const Feature chosen = features[rng.weighted(strengths)];
  std::vector<double> restricted = base;
  const auto& all = templates();
  for (std::size_t i = 0; i < all.size(); ++i)
    if (!all[i].gold[chosen]) restricted[i] = 0.0;
  return rng.weighted(restricted);
}

}  // namespace

SignalSpec parse_signal(std::string_view text) {
  SignalSpec out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(start, end - start);
    start = end + 1;
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (item.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw DomainError("signal entry '" + std::string(item) + "' needs feature=strength");
    const auto feature = parse_feature(item.substr(0, eq));
    if (!feature)
      throw DomainError("unknown feature '" + std::string(item.substr(0, eq)) + "'");
    double strength = 0.0;
    try {
      std::size_t used = 0;
      const std::string value(item.substr(eq + 1));
      strength = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DomainError("invalid strength in '" + std::string(item) + "'");
    }
    if (!(strength >= 0.0 && strength <= 1.0))
      throw DomainError("signal strength for '" + std::string(feature_name(*feature)) +
                        "' must lie in [0,1]");
    out[*feature] = strength;
    if (end == text.size()) break;
  }
  return out;
}

double synthetic_score(double empathic_fraction, double noise) {
  return std::clamp(1.0 + 4.0 * empathic_fraction + noise, 1.0, 5.0);
}

std::vector<SyntheticSentence> generate_sentences(std::uint64_t seed,
                                                  std::size_t count,
                                                  double medical_rate) {
  Sampler rng(seed);
  const auto base = base_weights();
  std::vector<SyntheticSentence> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t id = rng.weighted(base);
    const bool medical = rng.chance(medical_rate);
    out.push_back(build_sentence(templates()[id], id, rng, medical,
                                 "g" + std::to_string(i + 1)));
  }
  return out;
}

SyntheticCorpus generate(const SyntheticOptions& options) {
  if (options.n_essays < 5)
    throw DomainError("synthetic corpus needs at least 5 essays");
  if (options.min_sentences == 0 || options.min_sentences > options.max_sentences)
    throw DomainError("invalid sentence count range");
  if (!(options.medical_rate >= 0.0 && options.medical_rate <= 1.0))
    throw DomainError("medical_rate must lie in [0,1]");
  for (const auto& [f, s] : options.signal)
    if (!(s >= 0.0 && s <= 1.0))
      throw DomainError("signal strength for '" + std::string(feature_name(f)) +
                        "' must lie in [0,1]");

  Sampler rng(options.seed);
  SyntheticCorpus out;
  std::vector<EmpathyAnnotation> annotations;
  for (std::size_t e = 0; e < options.n_essays; ++e) {
    std::ostringstream id;
    id << "syn" << std::setw(4) << std::setfill('0') << (e + 1);
    const std::string essay_id = id.str();
    const std::size_t n_sentences =
        options.min_sentences +
        rng.below(options.max_sentences - options.min_sentences + 1);
    const double empathic_rate = rng.uniform(0.15, 0.75);

    std::vector<SyntheticSentence> sentences;
    std::size_t empathic = 0;
    for (std::size_t s = 0; s < n_sentences; ++s) {
      const bool is_empathic = rng.chance(empathic_rate);
      const std::size_t tpl = pick_template(rng, is_empathic, options.signal);
      const bool medical = rng.chance(options.medical_rate);
      auto sentence = build_sentence(templates()[tpl], tpl, rng, medical,
                                     essay_id + "-s" + std::to_string(s + 1));
      annotations.push_back({essay_id, sentence.sentence.sentence_id, is_empathic, {}});
      empathic += is_empathic ? 1 : 0;
      sentences.push_back(std::move(sentence));
    }
    const double fraction =
        static_cast<double>(empathic) / static_cast<double>(n_sentences);
    const double score = synthetic_score(fraction, rng.normal(options.score_noise));

    std::vector<Sentence> plain;
    for (const auto& s : sentences) plain.push_back(s.sentence);
    out.corpus.essays.push_back(make_essay(essay_id, std::move(plain), score));
    out.manifest.essays.push_back({essay_id, score, "essays/" + essay_id + ".conllu"});
    out.sentences.push_back(std::move(sentences));
  }
  out.manifest.annotations = annotations;
  out.corpus.annotations = AnnotationTable(std::move(annotations));
  return out;
}

void write_synthetic(const SyntheticCorpus& corpus,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "essays");
  for (std::size_t e = 0; e < corpus.corpus.essays.size(); ++e) {
    const auto& essay = corpus.corpus.essays[e];
    std::ofstream out(dir / corpus.manifest.essays[e].conllu_path, std::ios::binary);
    if (!out)
      throw LoadError({"cannot write essay file for '" + essay.essay_id + "'"});
    write_document(out, essay.sentences);
  }
  write_manifest(dir / "manifest.json", corpus.manifest);
}

}  // namespace transit
