// Prints one PASS/FAIL line per acceptance criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gold_check.hpp"
#include "oracles.hpp"
#include "test_util.hpp"
#include "transit/analysis.hpp"
#include "transit/conllu.hpp"
#include "transit/detectors.hpp"
#include "transit/heatmap.hpp"
#include "transit/linear_model.hpp"
#include "transit/metrics.hpp"
#include "transit/profiler.hpp"
#include "transit/protocol.hpp"
#include "transit/synthetic.hpp"
#include "transit/themes.hpp"
#include "transit/vocab.hpp"

namespace transit {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(const char* name, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%s  %-28s %s [%.2fs]\n", out.pass ? "PASS" : "FAIL", name, out.detail.c_str(),
              secs);
  std::fflush(stdout);
  failures += !out.pass;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const Corpus& fixture_corpus() {
  static const Corpus c = load_corpus(testing::corpus_manifest());
  return c;
}

SyntheticCorpus signal_corpus() {
  SyntheticOptions o;
  o.seed = 7;
  o.n_essays = 200;
  o.signal = parse_signal("bp_p=0.9");
  return generate(o);
}

Outcome detector_gold() {
  const auto start = Clock::now();
  const auto& lex = LexiconSet::shipped();
  const auto tones = ToneOverrides::load(testing::data_dir() / "gold" / "gold_tone.json");
  const auto doc = read_document(testing::gold_path());
  std::size_t agree = 0;
  std::string first;
  for (const auto& s : doc.sentences) {
    const auto m = testing::gold_mismatches(s, lex, tones);
    agree += m.empty();
    if (!m.empty() && first.empty()) first = " first: " + m.front();
  }
  const double secs = seconds_since(start);
  return {agree == 40 && doc.sentences.size() == 40 && secs < 1.0,
          std::to_string(agree) + "/" + std::to_string(doc.sentences.size()) + " agree" +
              fmt(", %.3fs (< 1s)", secs) + first};
}

Outcome invariants() {
  const auto& lex = LexiconSet::shipped();
  const auto tones = ToneOverrides::load(testing::data_dir() / "gold" / "gold_tone.json");
  std::size_t checked = 0, violations = 0;
  for (const auto& s : read_document(testing::gold_path()).sentences) {
    violations += !extract_features(s, lex, tones.find({}, s.sentence_id)).invariant_violations().empty();
    ++checked;
  }
  for (const auto& e : fixture_corpus().essays)
    for (const auto& s : e.sentences) {
      violations += !extract_features(s, lex).invariant_violations().empty();
      ++checked;
    }
  std::size_t generated = 0;
  for (const auto& g : generate_sentences(2024, 1000)) {
    violations += !extract_features(g.sentence, lex).invariant_violations().empty();
    ++generated;
  }
  return {violations == 0 && generated == 1000,
          std::to_string(checked) + " fixture + " + std::to_string(generated) +
              " generated sentences, " + std::to_string(violations) + " violations"};
}

Outcome theme_partition() {
  const auto& lex = LexiconSet::shipped();
  std::vector<const Corpus*> corpora = {&fixture_corpus()};
  std::vector<SyntheticCorpus> synthetic;
  for (std::uint64_t seed : {1, 2, 3}) {
    SyntheticOptions o;
    o.seed = seed;
    o.n_essays = 20;
    o.signal = parse_signal("ha_p=0.5");
    synthetic.push_back(generate(o));
  }
  for (const auto& s : synthetic) corpora.push_back(&s.corpus);
  bool ok = true;
  std::string detail;
  for (const Corpus* c : corpora) {
    const auto t = tag_corpus(c->essays, c->annotations, lex);
    std::size_t sum = 0;
    for (auto n : t.counts) sum += n;
    ok = ok && sum == c->sentence_count() && t.total() == sum;
    detail += (detail.empty() ? "" : "; ") + std::to_string(t.counts[0]) + "+" +
              std::to_string(t.counts[1]) + "+" + std::to_string(t.counts[2]) + "+" +
              std::to_string(t.counts[3]) + "=" + std::to_string(c->sentence_count());
  }
  const auto fixture = tag_corpus(fixture_corpus().essays, fixture_corpus().annotations, lex);
  ok = ok && fixture.counts == std::array<std::size_t, 4>{38, 41, 18, 23};
  return {ok, detail};
}

Outcome tone_grid() {
  std::size_t wrong = 0, cells = 0;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const bool want = i > 16 && j > 16;
      wrong += (classify_tone({i / 20.0, j / 20.0}) == Tone::kEnergetic) != want;
      ++cells;
    }
  const bool boundary = classify_tone({0.8, 0.8}) == Tone::kStatic;
  return {wrong == 0 && boundary,
          std::to_string(cells - wrong) + "/" + std::to_string(cells) +
              " grid cells, (0.8,0.8) -> " + (boundary ? "Static" : "Energetic")};
}

Outcome classifier_correctness() {
  const auto start = Clock::now();
  const auto lr = testing::check_gradients(ModelKind::kLogisticRegression, 42);
  const auto svm = testing::check_gradients(ModelKind::kLinearSvm, 99);

  bool separable = true;
  DesignMatrix toy(2, 2);
  toy.add_row({{0, 1.0}, {1, 0.2}}, 0);
  toy.add_row({{0, 0.8}}, 0);
  toy.add_row({{1, 1.0}}, 1);
  toy.add_row({{0, 0.1}, {1, 0.9}}, 1);
  for (auto kind : {ModelKind::kLogisticRegression, ModelKind::kLinearSvm})
    separable = separable && predict_all(train(toy, kind, {0.001, 5000, 1e-6}), toy) == toy.labels();

  const auto data = build_classification_data(
      fixture_corpus(), analyze_corpus(fixture_corpus(), LexiconSet::shipped()));
  bool identical = true;
  for (auto kind : {ModelKind::kLogisticRegression, ModelKind::kLinearSvm}) {
    ProtocolConfig c;
    c.model = kind;
    c.augment = true;
    identical = identical &&
                run_protocol(data, c).to_json().dump() == run_protocol(data, c).to_json().dump();
  }
  const double secs = seconds_since(start);
  return {lr.worst_gradient < 1e-4 && svm.worst_gradient < 1e-4 && separable && identical &&
              secs < 30,
          fmt("grad err logreg %.2e hinge %.2e", lr.worst_gradient, svm.worst_gradient) +
              ", separable " + (separable ? "100%" : "no") + ", seeded reruns " +
              (identical ? "identical" : "differ") + fmt(", %.1fs (< 30s)", secs)};
}

bool split_ok(const EssaySplit& s, std::size_t n_essays, const std::vector<LabeledSentence>& data,
              std::size_t test_rows) {
  const std::set<std::string> train(s.train_essays.begin(), s.train_essays.end());
  const std::set<std::string> test(s.test_essays.begin(), s.test_essays.end());
  bool ok = train.size() == s.train_essays.size() && test.size() == s.test_essays.size();
  for (const auto& e : test) ok = ok && !train.count(e);
  ok = ok && train.size() + test.size() == n_essays;
  ok = ok && test.size() == static_cast<std::size_t>(std::lround(0.2 * n_essays));
  std::multiset<std::string> folded;
  for (const auto& f : s.folds) folded.insert(f.begin(), f.end());
  ok = ok && s.folds.size() == 5 &&
       folded == std::multiset<std::string>(train.begin(), train.end());
  std::size_t expected_test_rows = 0;
  for (const auto& r : data) expected_test_rows += test.count(r.essay_id);
  return ok && expected_test_rows == test_rows;
}

Outcome protocol_fidelity() {
  const auto fixture = build_classification_data(
      fixture_corpus(), analyze_corpus(fixture_corpus(), LexiconSet::shipped()));
  ProtocolConfig c;
  c.max_epochs = 300;
  const auto r = run_protocol(fixture, c);
  bool ok = split_ok(r.split, 12, fixture, r.test_truth.size());

  SyntheticOptions o;
  o.n_essays = 50;
  const auto syn = generate(o);
  const auto syn_data = build_classification_data(
      syn.corpus, analyze_corpus(syn.corpus, LexiconSet::shipped()));
  const auto r2 = run_protocol(syn_data, c);
  ok = ok && split_ok(r2.split, 50, syn_data, r2.test_truth.size());
  return {ok, std::to_string(r.split.train_essays.size()) + "/" +
                  std::to_string(r.split.test_essays.size()) + " essays (fixture), " +
                  std::to_string(r2.split.train_essays.size()) + "/" +
                  std::to_string(r2.split.test_essays.size()) + " (synthetic), 5 folds"};
}

Outcome augmentation_effect() {
  const auto start = Clock::now();
  const auto syn = signal_corpus();
  const auto data = build_classification_data(
      syn.corpus, analyze_corpus(syn.corpus, LexiconSet::shipped()));
  ProtocolConfig c;
  c.seed = 7;
  const double plain = run_protocol(data, c).test_report.f1_of("empathetic");
  c.augment = true;
  const auto table = ablate(data, c);
  const double full = table.row("none").result.test_report.f1_of("empathetic");

  std::string largest;
  double largest_drop = -1e9, runner_up = -1e9;
  for (Feature f : kAllFeatures) {
    const std::string name(feature_name(f));
    const double drop = full - table.row(name).result.test_report.f1_of("empathetic");
    if (drop > largest_drop) {
      runner_up = largest_drop;
      largest_drop = drop;
      largest = name;
    } else {
      runner_up = std::max(runner_up, drop);
    }
  }
  const double secs = seconds_since(start);
  return {full - plain >= 0.05 && largest == "bp_p" && largest_drop > runner_up && secs < 300,
          fmt("empathetic F1 plain %.3f augmented %.3f (gain %.3f)", plain, full, full - plain) +
              ", largest drop " + largest + fmt(" %.3f (next %.3f)", largest_drop, runner_up) +
              fmt(", %.1fs (< 300s)", secs)};
}

Outcome heatmap_conservation() {
  const auto& lex = LexiconSet::shipped();
  std::vector<Essay> essays = fixture_corpus().essays;
  // One essay past the standard page to exercise the long grid.
  std::vector<Sentence> long_sentences;
  std::size_t words = 0;
  for (const auto& g : generate_sentences(5, 400)) {
    if (words > 700) break;
    Sentence s = g.sentence;
    s.sentence_id = "L" + std::to_string(long_sentences.size() + 1);
    words += s.word_count();
    long_sentences.push_back(std::move(s));
  }
  essays.push_back(make_essay("LONG", std::move(long_sentences), 4.2));
  std::vector<bool> flags;
  for (const auto& e : essays)
    for (const auto& s : e.sentences)
      flags.push_back(e.essay_id == "LONG" ? s.sentence_id.size() % 2 == 0
                                           : fixture_corpus().annotations.is_empathic(
                                                 e.essay_id, s.sentence_id));
  const auto themes = tag_corpus(essays, flags, lex);

  std::uint64_t placements = 0;
  std::size_t row = 0;
  for (const auto& e : essays)
    for (const auto& s : e.sentences) {
      const auto theme = themes.rows[row++].theme;
      if (theme == ThemeLabel::kNeither) continue;
      for (const auto& t : s.tokens) placements += t.upos != "PUNCT";
    }

  const auto maps = build_heatmaps(essays, themes);
  bool dims = true;
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t b = 0; b < 4; ++b) {
      const auto& sg = maps.grid(GridKind::kStandard, t, b);
      const auto& lg = maps.grid(GridKind::kLong, t, b);
      dims = dims && sg.rows() == 42 && sg.cols() == 14 && sg.cells().size() == 42 * 14 &&
             lg.rows() == 81 && lg.cols() == 14 && lg.cells().size() == 81 * 14;
    }
  const bool long_used = maps.has_long_essays();

  const auto again = build_heatmaps(essays, themes);
  bool identical = true;
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t b = 0; b < 4; ++b)
      for (auto kind : {GridKind::kStandard, GridKind::kLong})
        identical = identical && render_grid(maps.grid(kind, t, b), RenderFormat::kPgm) ==
                                     render_grid(again.grid(kind, t, b), RenderFormat::kPgm);
  return {maps.total() == placements && dims && long_used && identical,
          std::to_string(maps.total()) + " cell counts vs " + std::to_string(placements) +
              " themed placements, grids " + (dims ? "42x14/81x14" : "wrong size") +
              (long_used ? ", long grid used" : ", long grid unused") + ", PGM " +
              (identical ? "byte-identical" : "differs")};
}

Outcome profiler_direction() {
  const auto& c = fixture_corpus();
  const auto analysis = analyze_corpus(c, LexiconSet::shipped());
  std::vector<EmpathyProfile> profiles;
  std::map<std::string, double, std::less<>> scores;
  for (std::size_t i = 0; i < c.essays.size(); ++i) {
    profiles.push_back(profile_essay(c.essays[i], analysis.features_of(i), analysis.themes_of(i)));
    scores[c.essays[i].essay_id] = c.essays[i].empathy_score;
  }
  double hi = 0, lo = 0;
  int nh = 0, nl = 0;
  for (const auto& p : profiles) {
    if (scores[p.essay_id] >= 3) {
      hi += p.voice_active_fraction;
      ++nh;
    } else {
      lo += p.voice_active_fraction;
      ++nl;
    }
  }
  hi /= nh;
  lo /= nl;
  return {nh > 0 && nl > 0 && hi > lo,
          fmt("mean active fraction above 3: %.3f, below 3: %.3f", hi, lo)};
}

}  // namespace
}  // namespace transit

int main() {
  using namespace transit;
  criterion("detector-gold-suite", detector_gold);
  criterion("feature-invariants", invariants);
  criterion("theme-partition", theme_partition);
  criterion("tone-threshold", tone_grid);
  criterion("classifier-correctness", classifier_correctness);
  criterion("protocol-fidelity", protocol_fidelity);
  criterion("augmentation-effect", augmentation_effect);
  criterion("heatmap-conservation", heatmap_conservation);
  criterion("profiler-direction", profiler_direction);
  std::printf("%d criteria failed\n", failures);
  return failures;
}
