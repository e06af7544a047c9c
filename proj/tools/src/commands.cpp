#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "output.hpp"
#include "transit/analysis.hpp"
#include "transit/conllu.hpp"
#include "transit/detectors.hpp"
#include "transit/errors.hpp"
#include "transit/heatmap.hpp"
#include "transit/lexicon.hpp"
#include "transit/profiler.hpp"
#include "transit/protocol.hpp"
#include "transit/synthetic.hpp"
#include "transit/themes.hpp"
#include "transit/vocab.hpp"

namespace transit::cli {

namespace fs = std::filesystem;

namespace {

using ScoreMap = std::map<std::string, double, std::less<>>;

void require_manifest(const CommonOptions& c) {
  if (c.manifest.empty()) throw UsageError("--manifest is required");
}

void require_out(const CommonOptions& c, std::string_view command) {
  if (c.out.empty())
    throw UsageError(std::string(command) + " writes files; --out is required");
}

// Corpus, lexicons and per-sentence analysis shared by most commands.
struct Loaded {
  Corpus corpus;
  LexiconSet lex;
  ToneOverrides tones;
  CorpusAnalysis analysis;
};

Loaded load_and_analyze(const CommonOptions& c, RunRecord& record) {
  require_manifest(c);
  Loaded l;
  l.corpus = load_corpus(c.manifest);
  if (!c.lexicon_dir.empty() && !fs::is_directory(c.lexicon_dir))
    throw UsageError("--lexicon-dir " + c.lexicon_dir.string() + " is not a directory");
  l.lex = c.lexicon_dir.empty() ? LexiconSet::shipped() : LexiconSet::load(c.lexicon_dir);
  if (!c.tone_file.empty()) l.tones = ToneOverrides::load(c.tone_file);
  AnalysisOptions opts;
  opts.tone_overrides = c.tone_file.empty() ? nullptr : &l.tones;
  opts.jobs = c.jobs;
  l.analysis = analyze_corpus(l.corpus, l.lex, opts);

  record.add_input("manifest", c.manifest);
  record.add_input("lexicon_dir", c.lexicon_dir);
  record.add_input("tone_file", c.tone_file);
  record.flags()["jobs"] = c.jobs;
  return l;
}

ScoreMap scores_of(const Corpus& corpus) {
  ScoreMap scores;
  for (const auto& e : corpus.essays) scores[e.essay_id] = e.empathy_score;
  return scores;
}

std::string features_csv(const Corpus& corpus, const CorpusAnalysis& analysis) {
  std::ostringstream out;
  out << "essay_id,sentence_id";
  for (Feature f : kAllFeatures) out << ',' << feature_name(f);
  out << ",extroversion,confidence\n";
  out << std::fixed << std::setprecision(4);
  for (std::size_t e = 0; e < corpus.essays.size(); ++e) {
    const auto& essay = corpus.essays[e];
    for (std::size_t s = 0; s < essay.sentences.size(); ++s) {
      const auto& a = analysis.essays[e].sentences[s];
      out << essay.essay_id << ',' << essay.sentences[s].sentence_id;
      for (bool b : a.features.bits) out << ',' << (b ? 1 : 0);
      out << ',' << a.tone.extroversion << ',' << a.tone.confidence << '\n';
    }
  }
  return out.str();
}

void print_frequency_summary(std::ostream& out, const Corpus& corpus,
                             const CorpusAnalysis& analysis) {
  std::array<std::size_t, kFeatureCount> counts{};
  std::size_t total = 0;
  for (const auto& essay : analysis.essays)
    for (const auto& s : essay.sentences) {
      ++total;
      for (std::size_t f = 0; f < kFeatureCount; ++f) counts[f] += s.features.bits[f];
    }
  const auto pct = [&](std::size_t n) {
    return total ? 100.0 * static_cast<double>(n) / static_cast<double>(total) : 0.0;
  };
  out << corpus.essays.size() << " essays, " << total << " sentences\n";
  out << std::left << std::setw(12) << "feature" << std::right << std::setw(10)
      << "sentences" << std::setw(10) << "percent" << '\n';
  out << std::fixed << std::setprecision(2);
  for (Feature f : kAllFeatures) {
    const auto n = counts[static_cast<std::size_t>(f)];
    out << std::left << std::setw(12) << feature_label(f) << std::right << std::setw(10) << n
        << std::setw(10) << pct(n) << '\n';
  }
  out << '\n' << std::left << std::setw(12) << "theme" << std::right << std::setw(10)
      << "sentences" << std::setw(10) << "percent" << '\n';
  for (ThemeLabel t : kAllThemes) {
    const auto n = analysis.themes.counts[static_cast<std::size_t>(t)];
    out << std::left << std::setw(12) << theme_name(t) << std::right << std::setw(10) << n
        << std::setw(10) << pct(n) << '\n';
  }
}

ProtocolConfig protocol_config(const CommonOptions& c, const TrainFlags& flags,
                               RunRecord& record) {
  ProtocolConfig config;
  if (!c.config.empty()) {
    std::ifstream in(c.config);
    if (!in) throw UsageError("cannot read --config " + c.config.string());
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("--config " + c.config.string() + " is not valid JSON: " + e.what());
    }
    config = ProtocolConfig::from_json(j);
    record.add_input("config", c.config);
  }
  if (flags.model) config.model = parse_model_kind(*flags.model);
  if (flags.augment) config.augment = true;
  if (flags.binary) config.binary = true;
  if (c.seed) config.seed = *c.seed;
  config.jobs = c.jobs;
  record.flags()["protocol"] = config.to_json();
  return config;
}

std::string metrics_csv(const EvalReport& r) {
  std::ostringstream out;
  out << "class,precision,recall,f1,support\n" << std::fixed << std::setprecision(4);
  for (std::size_t c = 0; c < r.class_names.size(); ++c)
    out << r.class_names[c] << ',' << r.precision[c] << ',' << r.recall[c] << ',' << r.f1[c]
        << ',' << r.support[c] << '\n';
  return out.str();
}

std::string predictions_csv(const ProtocolResult& r) {
  std::ostringstream out;
  out << "essay_id,sentence_id,truth,predicted\n";
  const auto& names = r.test_report.class_names;
  for (std::size_t i = 0; i < r.test_ids.size(); ++i)
    out << r.test_ids[i].first << ',' << r.test_ids[i].second << ','
        << names[static_cast<std::size_t>(r.test_truth[i])] << ','
        << names[static_cast<std::size_t>(r.test_predicted[i])] << '\n';
  return out.str();
}

void print_report_summary(std::ostream& out, const ProtocolResult& r) {
  out << "train essays " << r.split.train_essays.size() << ", test essays "
      << r.split.test_essays.size() << ", selected l2 " << r.selected_lambda << '\n';
  out << std::fixed << std::setprecision(4);
  const auto& t = r.test_report;
  for (std::size_t c = 0; c < t.class_names.size(); ++c)
    out << std::left << std::setw(12) << t.class_names[c] << " P " << t.precision[c] << "  R "
        << t.recall[c] << "  F1 " << t.f1[c] << "  n " << t.support[c] << '\n';
  out << "accuracy " << t.accuracy() << ", macro F1 " << t.macro_f1() << '\n';
}

std::vector<std::size_t> selected_themes(const std::string& name) {
  if (name == "all") return {0, 1, 2};
  const auto theme = parse_theme(name);
  for (std::size_t i = 0; i < kHeatmapThemes.size(); ++i)
    if (theme && kHeatmapThemes[i] == *theme) return {i};
  throw UsageError("--theme must be medical, empathetic, both or all; got '" + name + "'");
}

std::vector<std::size_t> selected_buckets(const std::string& label) {
  if (label == "all") return {0, 1, 2, 3};
  const auto b = parse_bucket(label);
  if (!b) throw UsageError("--bucket must be 1-2, 2-3, 3-4, 4-5 or all; got '" + label + "'");
  return {b->index};
}

}  // namespace

int run_analyze(const CommonOptions& c, std::ostream& out) {
  RunRecord record("analyze");
  const Loaded l = load_and_analyze(c, record);
  if (!c.out.empty()) {
    record.write(c.out, "features.csv", features_csv(l.corpus, l.analysis));
    std::ostringstream themes;
    write_theme_csv(themes, l.analysis.themes);
    record.write(c.out, "themes.csv", themes.str());
    record.save(c.out);
  }
  print_frequency_summary(out, l.corpus, l.analysis);
  return 0;
}

int run_profile(const CommonOptions& c, std::ostream& out) {
  RunRecord record("profile");
  const Loaded l = load_and_analyze(c, record);
  std::vector<EmpathyProfile> profiles;
  for (std::size_t i = 0; i < l.corpus.essays.size(); ++i)
    profiles.push_back(profile_essay(l.corpus.essays[i], l.analysis.features_of(i),
                                     l.analysis.themes_of(i)));
  const ScoreMap scores = scores_of(l.corpus);
  const auto report = bucket_report(profiles, scores);
  std::ostringstream profile_csv, bucket_csv;
  write_profile_csv(profile_csv, profiles, scores);
  write_bucket_csv(bucket_csv, report);
  if (c.out.empty()) {
    out << profile_csv.str();
    return 0;
  }
  record.write(c.out, "profiles.csv", profile_csv.str());
  record.write(c.out, "buckets.csv", bucket_csv.str());
  record.save(c.out);
  out << std::fixed << std::setprecision(4);
  for (const auto& b : report) {
    out << "bucket " << b.bucket.label() << ": " << b.essay_count << " essays";
    if (b.means) out << ", mean active fraction " << b.means->voice_active_fraction;
    out << '\n';
  }
  return 0;
}

int run_heatmap(const CommonOptions& c, const HeatmapOptions& opts, std::ostream& out) {
  require_out(c, "heatmap");
  const auto themes = selected_themes(opts.theme);
  const auto buckets = selected_buckets(opts.bucket);
  const RenderFormat format = parse_render_format(opts.format);
  RunRecord record("heatmap");
  record.flags()["theme"] = opts.theme;
  record.flags()["bucket"] = opts.bucket;
  record.flags()["format"] = opts.format;
  const Loaded l = load_and_analyze(c, record);
  const HeatmapSet maps = build_heatmaps(l.corpus.essays, l.analysis.themes);

  std::vector<GridKind> kinds = {GridKind::kStandard};
  if (maps.has_long_essays()) kinds.push_back(GridKind::kLong);
  std::size_t written = 0;
  for (GridKind kind : kinds)
    for (std::size_t t : themes)
      for (std::size_t b : buckets) {
        const PageGrid& g = maps.grid(kind, t, b);
        std::string name = "heatmap_" + std::string(theme_name(kHeatmapThemes[t])) + "_" +
                           all_buckets()[b].label();
        if (kind == GridKind::kLong) name += "_long";
        name += "." + std::string(format_extension(format));
        record.write(c.out, name, render_grid(g, format));
        out << name << "  " << g.rows() << "x" << g.cols() << "  total " << g.total()
            << "  max " << g.max_count() << '\n';
        ++written;
      }
  record.save(c.out);
  out << written << " grids written to " << c.out.string() << '\n';
  return 0;
}

int run_train(const CommonOptions& c, const TrainFlags& flags, std::ostream& out) {
  RunRecord record("train");
  const ProtocolConfig config = protocol_config(c, flags, record);
  const Loaded l = load_and_analyze(c, record);
  const auto data = build_classification_data(l.corpus, l.analysis);
  const ProtocolResult result = run_protocol(data, config);
  nlohmann::ordered_json report;
  report["config"] = config.to_json();
  report["result"] = result.to_json();
  if (c.out.empty()) {
    out << report.dump(2) << '\n';
    return 0;
  }
  record.write(c.out, "report.json", report.dump(2) + "\n");
  record.write(c.out, "metrics.csv", metrics_csv(result.test_report));
  record.write(c.out, "predictions.csv", predictions_csv(result));
  record.save(c.out);
  print_report_summary(out, result);
  return 0;
}

int run_ablate(const CommonOptions& c, const TrainFlags& flags, std::ostream& out) {
  RunRecord record("ablate");
  TrainFlags f = flags;
  f.augment = true;
  const ProtocolConfig config = protocol_config(c, f, record);
  const Loaded l = load_and_analyze(c, record);
  const auto data = build_classification_data(l.corpus, l.analysis);
  const AblationTable table = ablate(data, config);
  std::ostringstream csv;
  write_ablation_csv(csv, table);
  if (c.out.empty()) {
    out << csv.str();
    return 0;
  }
  record.write(c.out, "ablation.csv", csv.str());
  record.save(c.out);
  out << table.rows.size() << " runs written to " << (c.out / "ablation.csv").string() << '\n';
  return 0;
}

int run_fixtures(const CommonOptions& c, const FixtureOptions& opts, std::ostream& out) {
  require_out(c, "fixtures");
  SyntheticOptions o;
  if (c.seed) o.seed = *c.seed;
  if (opts.essays < 5) throw UsageError("--essays must be at least 5");
  o.n_essays = opts.essays;
  try {
    o.signal = parse_signal(opts.signal);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--signal: ") + e.what());
  }
  const SyntheticCorpus syn = generate(o);
  write_synthetic(syn, c.out);

  RunRecord record("fixtures");
  record.flags()["seed"] = o.seed;
  record.flags()["essays"] = o.n_essays;
  record.flags()["signal"] = opts.signal;
  record.save(c.out);
  out << syn.corpus.essays.size() << " essays, " << syn.corpus.sentence_count()
      << " sentences, " << syn.corpus.annotations.empathic_count() << " empathic, written to "
      << c.out.string() << '\n';
  return 0;
}

}  // namespace transit::cli
