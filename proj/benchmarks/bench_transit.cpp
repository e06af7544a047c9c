#include <benchmark/benchmark.h>

#include "transit/analysis.hpp"
#include "transit/conllu.hpp"
#include "transit/detectors.hpp"
#include "transit/heatmap.hpp"
#include "transit/linear_model.hpp"
#include "transit/synthetic.hpp"
#include "transit/vocab.hpp"

namespace {

using namespace transit;

const SyntheticCorpus& corpus_of(std::size_t essays) {
  static std::map<std::size_t, SyntheticCorpus> cache;
  auto it = cache.find(essays);
  if (it == cache.end()) {
    SyntheticOptions o;
    o.seed = 7;
    o.n_essays = essays;
    o.signal = parse_signal("bp_p=0.9");
    it = cache.emplace(essays, generate(o)).first;
  }
  return it->second;
}

void BM_ParseConllu(benchmark::State& state) {
  std::vector<Sentence> sentences;
  for (const auto& e : corpus_of(50).corpus.essays)
    sentences.insert(sentences.end(), e.sentences.begin(), e.sentences.end());
  const std::string text = to_conllu(sentences);
  for (auto _ : state) benchmark::DoNotOptimize(parse_document(std::string_view(text)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sentences.size()));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseConllu);

void BM_ExtractFeatures(benchmark::State& state) {
  const auto sentences = generate_sentences(1, 1000);
  const auto& lex = LexiconSet::shipped();
  for (auto _ : state)
    for (const auto& s : sentences) benchmark::DoNotOptimize(extract_features(s.sentence, lex));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_ExtractFeatures);

void BM_AnalyzeCorpus(benchmark::State& state) {
  const auto& syn = corpus_of(200);
  AnalysisOptions opts;
  opts.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(analyze_corpus(syn.corpus, LexiconSet::shipped(), opts));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(syn.corpus.sentence_count()));
}
BENCHMARK(BM_AnalyzeCorpus)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BuildHeatmaps(benchmark::State& state) {
  const auto& syn = corpus_of(200);
  const auto analysis = analyze_corpus(syn.corpus, LexiconSet::shipped());
  for (auto _ : state) benchmark::DoNotOptimize(build_heatmaps(syn.corpus.essays, analysis.themes));
}
BENCHMARK(BM_BuildHeatmaps);

void BM_RenderPgm(benchmark::State& state) {
  PageGrid g(GridKind::kLong);
  for (std::size_t i = 0; i < g.rows(); ++i) g.at(i, i % g.cols()) = static_cast<std::uint32_t>(i);
  for (auto _ : state) benchmark::DoNotOptimize(render_grid(g, RenderFormat::kPgm));
}
BENCHMARK(BM_RenderPgm);

DesignMatrix design_matrix(std::size_t essays) {
  const auto& syn = corpus_of(essays);
  const auto data =
      build_classification_data(syn.corpus, analyze_corpus(syn.corpus, LexiconSet::shipped()));
  return vectorize(data, VocabIndex::build(data), {true, {}}, TaskSpec::four_way());
}

void BM_Train(benchmark::State& state) {
  const auto x = design_matrix(static_cast<std::size_t>(state.range(0)));
  const auto kind = state.range(1) ? ModelKind::kLinearSvm : ModelKind::kLogisticRegression;
  for (auto _ : state) benchmark::DoNotOptimize(train(x, kind, {0.01, 5000, 1e-6}));
  state.SetLabel(std::string(model_kind_name(kind)) + ", " + std::to_string(x.rows()) + " rows");
}
BENCHMARK(BM_Train)
    ->Args({50, 0})
    ->Args({50, 1})
    ->Args({200, 0})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
