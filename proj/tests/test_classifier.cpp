#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "test_util.hpp"
#include "transit/analysis.hpp"
#include "transit/conllu.hpp"
#include "transit/errors.hpp"
#include "transit/linear_model.hpp"
#include "transit/metrics.hpp"
#include "transit/protocol.hpp"
#include "transit/vocab.hpp"

namespace transit {
namespace {

LabeledSentence labeled(std::vector<std::string> words, ThemeLabel theme,
                        std::string essay = "E1") {
  LabeledSentence s;
  s.essay_id = std::move(essay);
  s.sentence_id = "s";
  s.words = std::move(words);
  s.theme = theme;
  return s;
}

const std::vector<LabeledSentence>& fixture_data() {
  static const auto data = [] {
    const Corpus c = load_corpus(testing::corpus_manifest());
    return build_classification_data(c, analyze_corpus(c, LexiconSet::shipped()));
  }();
  return data;
}

TEST(Vectorize, Counts) {
  const auto vocab = VocabIndex::from_terms({"she", "smiled"});
  const std::vector<LabeledSentence> rows = {
      labeled({"she", "smiled"}, ThemeLabel::kEmpathetic),
      labeled({"she", "she", "zebra"}, ThemeLabel::kNeither)};
  const auto m = vectorize(rows, vocab, {}, TaskSpec::four_way());
  EXPECT_EQ(m.width(), 2u);
  EXPECT_EQ(m.dense_row(0), (std::vector<double>{1, 1}));
  EXPECT_EQ(m.dense_row(1), (std::vector<double>{2, 0}));
  EXPECT_EQ(m.labels()[0], 1);
  EXPECT_EQ(m.labels()[1], 3);
}

TEST(Vectorize, AugmentAndAblate) {
  const auto vocab = VocabIndex::from_terms({"she", "smiled"});
  auto row = labeled({"she", "smiled"}, ThemeLabel::kEmpathetic);
  row.features[Feature::kActive] = true;
  row.features[Feature::kBodyPart] = true;
  const std::vector<LabeledSentence> rows = {row};
  AugmentOptions aug{true, {}};
  const auto full = vectorize(rows, vocab, aug, TaskSpec::four_way()).dense_row(0);
  ASSERT_EQ(full.size(), 12u);
  EXPECT_EQ(full, (std::vector<double>{1, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0}));
  aug.excluded[static_cast<std::size_t>(Feature::kBodyPart)] = true;
  const auto ablated = vectorize(rows, vocab, aug, TaskSpec::four_way()).dense_row(0);
  ASSERT_EQ(ablated.size(), full.size());
  for (std::size_t i = 0; i < full.size(); ++i)
    EXPECT_EQ(ablated[i], i == 7 ? 0.0 : full[i]) << i;
}

TEST(Vectorize, VocabFromTrainingRowsOnly) {
  const std::vector<LabeledSentence> rows = {labeled({"b", "a"}, ThemeLabel::kBoth),
                                             labeled({"c", "a"}, ThemeLabel::kBoth)};
  const auto vocab = VocabIndex::build(rows);
  EXPECT_EQ(vocab.terms(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(vocab.index_of("c"), 2u);
  EXPECT_FALSE(vocab.index_of("zebra"));
}

TEST(Vectorize, BinaryTaskRejectsOtherThemes) {
  std::vector<LabeledSentence> rows = {labeled({"a"}, ThemeLabel::kMedicalProcedural),
                                       labeled({"a"}, ThemeLabel::kEmpathetic)};
  const auto m = vectorize(rows, VocabIndex::build(rows), {}, TaskSpec::binary());
  EXPECT_EQ(m.num_classes(), 2u);
  EXPECT_EQ(m.labels(), (std::vector<int>{0, 1}));
  rows.push_back(labeled({"a"}, ThemeLabel::kBoth));
  EXPECT_THROW(vectorize(rows, VocabIndex::build(rows), {}, TaskSpec::binary()), ContractError);
}

void check_gradient(ModelKind kind, std::uint64_t seed) {
  const auto r = testing::check_gradients(kind, seed);
  EXPECT_LT(r.worst_gradient, 1e-4);
  EXPECT_LT(r.worst_objective, 1e-12);
}

TEST(Training, LogisticGradientMatchesFiniteDifferences) {
  check_gradient(ModelKind::kLogisticRegression, 42);
}

TEST(Training, HingeSubgradientMatchesFiniteDifferences) {
  check_gradient(ModelKind::kLinearSvm, 99);
}

DesignMatrix toy_separable() {
  DesignMatrix x(2, 2);
  x.add_row({{0, 1.0}, {1, 0.2}}, 0);
  x.add_row({{0, 0.8}}, 0);
  x.add_row({{1, 1.0}}, 1);
  x.add_row({{0, 0.1}, {1, 0.9}}, 1);
  return x;
}

TEST(Training, SeparableToySet) {
  for (auto kind : {ModelKind::kLogisticRegression, ModelKind::kLinearSvm}) {
    const auto x = toy_separable();
    const auto model = train(x, kind, {0.001, 5000, 1e-6});
    EXPECT_EQ(predict_all(model, x), x.labels()) << model_kind_name(kind);
    for (const auto& w : model.weights)
      for (double v : w) EXPECT_TRUE(std::isfinite(v));
    EXPECT_EQ(model.weights[0].size(), x.width());
  }
}

TEST(Training, EmptyRowsPredictMajority) {
  for (auto kind : {ModelKind::kLogisticRegression, ModelKind::kLinearSvm}) {
    DesignMatrix x(3, 3);
    for (int label : {2, 2, 2, 0, 1, 2, 0}) x.add_row({}, label);
    const auto model = train(x, kind, {});
    for (int p : predict_all(model, x)) EXPECT_EQ(p, 2) << model_kind_name(kind);
  }
}

TEST(Training, SingleClassRejected) {
  DesignMatrix x(1, 4);
  x.add_row({{0, 1}}, 1);
  x.add_row({{0, 2}}, 1);
  EXPECT_THROW(train(x, ModelKind::kLogisticRegression, {}), TrainingError);
}

TEST(Training, ObjectiveTracesNeverIncrease) {
  const auto& data = fixture_data();
  const auto vocab = VocabIndex::build(data);
  const auto x = vectorize(data, vocab, {true, {}}, TaskSpec::four_way());
  std::vector<double> y;
  for (int l : x.labels()) y.push_back(l == 1 ? 1.0 : -1.0);
  for (double lambda : {0.0, 0.01, 1.0}) {
    const auto fit = fit_binary(ModelKind::kLogisticRegression, x, y, {lambda, 400, 1e-6});
    ASSERT_GT(fit.objective_trace.size(), 1u);
    for (std::size_t i = 1; i < fit.objective_trace.size(); ++i) {
      EXPECT_LE(fit.objective_trace[i], fit.objective_trace[i - 1]) << lambda << " @" << i;
      if (lambda == 0.0)
        EXPECT_LE(fit.data_loss_trace[i], fit.data_loss_trace[i - 1]) << i;
    }
  }
}

TEST(Training, Deterministic) {
  const auto x = toy_separable();
  const auto a = train(x, ModelKind::kLinearSvm, {});
  const auto b = train(x, ModelKind::kLinearSvm, {});
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.bias, b.bias);
}

TEST(Training, TiesGoToLowestClass) {
  LinearModel m;
  m.weights = {{0.0}, {0.0}, {0.0}};
  m.bias = {0.5, 0.5, 0.1};
  m.trained = {true, true, true};
  EXPECT_EQ(m.predict({}), 0);
  m.trained = {false, true, true};
  EXPECT_EQ(m.predict({}), 1);
}

TEST(Metrics, PerfectPredictions) {
  const std::vector<int> t = {0, 1, 2, 3, 1};
  const auto r = make_report(t, t, {"a", "b", "c", "d"});
  for (double f : r.f1) EXPECT_EQ(f, 1.0);
  EXPECT_EQ(r.accuracy(), 1.0);
}

TEST(Metrics, AllOneClass) {
  const std::vector<int> t = {0, 0, 1, 1}, p = {1, 1, 1, 1};
  const auto r = make_report(t, p, {"a", "b"});
  EXPECT_EQ(r.recall[1], 1.0);
  EXPECT_EQ(r.precision[1], 0.5);
  EXPECT_EQ(r.f1[0], 0.0);
  EXPECT_DOUBLE_EQ(r.f1_of("b"), 2 * 0.5 / 1.5);
}

TEST(Metrics, IdentitiesOnRandomPredictions) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> cls(0, 3);
  for (int round = 0; round < 50; ++round) {
    std::vector<int> t(40), p(40);
    for (auto& v : t) v = cls(rng);
    for (auto& v : p) v = cls(rng);
    const auto r = make_report(t, p, {"a", "b", "c", "d"});
    EXPECT_DOUBLE_EQ(r.micro_recall(), r.accuracy());
    for (std::size_t c = 0; c < 4; ++c) {
      std::size_t row = 0;
      for (auto v : r.confusion[c]) row += v;
      EXPECT_EQ(row, r.support[c]);
      const double pr = r.precision[c], rc = r.recall[c];
      EXPECT_NEAR(r.f1[c], pr + rc == 0 ? 0 : 2 * pr * rc / (pr + rc), 1e-12);
    }
  }
}

class FixtureProtocol : public ::testing::Test {
 protected:
  static ProtocolConfig config(bool augment) {
    ProtocolConfig c;
    c.augment = augment;
    c.max_epochs = 500;
    return c;
  }
};

TEST_F(FixtureProtocol, SplitIntegrity) {
  const auto r = run_protocol(fixture_data(), config(false));
  const std::set<std::string> train(r.split.train_essays.begin(), r.split.train_essays.end());
  const std::set<std::string> test(r.split.test_essays.begin(), r.split.test_essays.end());
  EXPECT_EQ(train.size() + test.size(), 12u);
  for (const auto& e : test) EXPECT_EQ(train.count(e), 0u);
  std::multiset<std::string> folded;
  for (const auto& f : r.split.folds) folded.insert(f.begin(), f.end());
  EXPECT_EQ(folded, std::multiset<std::string>(train.begin(), train.end()));
  std::size_t test_sentences = 0;
  for (const auto& s : fixture_data()) test_sentences += test.count(s.essay_id);
  EXPECT_EQ(r.test_truth.size(), test_sentences);
  EXPECT_EQ(r.test_report.total(), test_sentences);
}

TEST_F(FixtureProtocol, ReportMatchesRecount) {
  const auto r = run_protocol(fixture_data(), config(true));
  const auto& t = r.test_truth;
  const auto& p = r.test_predicted;
  for (std::size_t c = 0; c < r.test_report.class_names.size(); ++c) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      tp += t[i] == int(c) && p[i] == int(c);
      fp += t[i] != int(c) && p[i] == int(c);
      fn += t[i] == int(c) && p[i] != int(c);
    }
    const double pr = tp + fp ? tp / (tp + fp) : 0, rc = tp + fn ? tp / (tp + fn) : 0;
    EXPECT_NEAR(r.test_report.precision[c], pr, 1e-12);
    EXPECT_NEAR(r.test_report.recall[c], rc, 1e-12);
  }
  const auto grid = config(true).l2_grid;
  EXPECT_NE(std::find(grid.begin(), grid.end(), r.selected_lambda), grid.end());
  EXPECT_EQ(r.cv_macro_f1.size(), grid.size());
}

TEST_F(FixtureProtocol, SeededRunsAreByteIdentical) {
  const auto a = run_protocol(fixture_data(), config(true)).to_json().dump();
  const auto b = run_protocol(fixture_data(), config(true)).to_json().dump();
  EXPECT_EQ(a, b);
}

TEST_F(FixtureProtocol, BinaryHasTwoClasses) {
  const auto r = run_binary_protocol(fixture_data(), config(false));
  EXPECT_EQ(r.test_report.class_names,
            (std::vector<std::string>{"medical", "empathetic"}));
  EXPECT_EQ(r.test_report.confusion.size(), 2u);
}

TEST_F(FixtureProtocol, AblationHasElevenRows) {
  auto c = config(true);
  c.l2_grid = {0.01};
  c.max_epochs = 200;
  const auto table = ablate(fixture_data(), c);
  ASSERT_EQ(table.rows.size(), 11u);
  EXPECT_EQ(table.rows[0].excluded, "none");
  EXPECT_EQ(table.row("bp_p").excluded, "bp_p");
  for (const auto& row : table.rows)
    EXPECT_EQ(row.result.split.test_essays, table.rows[0].result.split.test_essays);
  std::ostringstream csv;
  write_ablation_csv(csv, table);
  const std::string text = csv.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 12);
}

TEST(Split, TenEssays) {
  std::vector<std::string> ids;
  for (int i = 0; i < 10; ++i) ids.push_back("e" + std::to_string(i));
  const auto s = split_essays(ids, 7, 5, 0.2);
  EXPECT_EQ(s.train_essays.size(), 8u);
  EXPECT_EQ(s.test_essays.size(), 2u);
  EXPECT_EQ(s.folds.size(), 5u);
  EXPECT_EQ(split_essays(ids, 7, 5, 0.2).test_essays, s.test_essays);
}

TEST(Split, TooFewEssays) {
  std::vector<LabeledSentence> data;
  for (int i = 0; i < 4; ++i)
    data.push_back(labeled({"a"}, i % 2 ? ThemeLabel::kBoth : ThemeLabel::kNeither,
                           "e" + std::to_string(i)));
  EXPECT_THROW(run_protocol(data, {}), ProtocolError);
}

}  // namespace
}  // namespace transit
