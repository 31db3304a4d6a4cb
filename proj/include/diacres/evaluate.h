// Copyright 2026 The diacres Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIACRES_EVALUATE_H_
#define DIACRES_EVALUATE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "diacres/corpus.h"
#include "diacres/dataset.h"

namespace diacres {

// Rows are true labels, columns predictions.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::vector<std::string> classes);

  const std::vector<std::string>& classes() const { return classes_; }
  std::uint64_t at(std::size_t truth, std::size_t predicted) const {
    return cells_[truth * classes_.size() + predicted];
  }
  std::uint64_t& at(std::size_t truth, std::size_t predicted) {
    return cells_[truth * classes_.size() + predicted];
  }
  std::size_t IndexOf(const std::string& label) const;  // npos if absent
  // Adds an unseen label as a new class.
  std::size_t EnsureClass(const std::string& label);
  void Add(const std::string& truth, const std::string& predicted);
  void Merge(const ConfusionMatrix& other);

  std::uint64_t Total() const;
  std::uint64_t Trace() const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::vector<std::string> classes_;
  std::vector<std::uint64_t> cells_;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
};

struct Metrics {
  double accuracy = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::vector<ClassMetrics> per_class;  // in matrix class order
};

// One-vs-rest precision/recall/F1 per class (0/0 -> 0), macro means over
// classes, accuracy = trace / total. Throws ParamError on an empty matrix.
Metrics ComputeMetrics(const ConfusionMatrix& cm);

// Partitions [0, n) into k folds. Each label's indices are shuffled with
// `seed` and dealt round-robin, so every fold holds floor or ceil of
// label_total / k of each label. Throws ParamError if k < 2 or n < k.
std::vector<std::vector<std::size_t>> StratifiedFolds(
    std::span<const std::string> labels, std::size_t k, std::uint64_t seed);

// A restorer trained on some instances of one ambiguous set.
class SetPredictor {
 public:
  virtual ~SetPredictor() = default;
  virtual std::string Predict(const Instance& inst) const = 0;
};

// Trains per-fold predictors. Must be callable concurrently.
class RestorerFactory {
 public:
  virtual ~RestorerFactory() = default;
  virtual std::string Name() const = 0;
  virtual std::unique_ptr<SetPredictor> Train(
      const AmbiguousSet& set, std::span<const std::size_t> train,
      std::span<const std::size_t> test) const = 0;
};

struct CvResult {
  std::string wordkey;
  ConfusionMatrix matrix;
  std::vector<double> fold_accuracy;
  std::vector<std::string> warnings;
  bool train_on_all = false;  // fewer instances than folds
};

// k-fold cross-validation of one set; matrices are summed over folds. A
// fold whose training throws is scored with the training-fold majority
// label and recorded in `warnings`.
CvResult CrossValidate(const RestorerFactory& factory, const AmbiguousSet& set,
                       std::size_t k = 10, std::uint64_t seed = 1);

// Every set, in parallel across sets. Same result as the serial version.
std::vector<CvResult> CrossValidateAll(const RestorerFactory& factory,
                                       std::span<const AmbiguousSet> sets,
                                       std::size_t k = 10,
                                       std::uint64_t seed = 1);
std::vector<CvResult> CrossValidateAllSerial(const RestorerFactory& factory,
                                             std::span<const AmbiguousSet> sets,
                                             std::size_t k = 10,
                                             std::uint64_t seed = 1);

struct WordkeyScore {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t count = 0;
};

struct AggregateScore {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricReport {
  std::map<std::string, WordkeyScore> per_wordkey;
  AggregateScore weighted;    // count-weighted means
  AggregateScore unweighted;  // simple means over wordkeys
};

WordkeyScore ScoreOf(const ConfusionMatrix& cm);
MetricReport Aggregate(const std::map<std::string, WordkeyScore>& per_wordkey);

// Report JSON with per-wordkey scores, both aggregates and per-fold
// accuracies. `baselines` (wordkey -> majority share) feed the
// improvement and error-reduction columns.
nlohmann::ordered_json ReportToJson(const std::string& model,
                                    std::span<const CvResult> results,
                                    const MetricReport& report,
                                    const std::map<std::string, double>& baselines);
// TSV with columns wordkey, count, accuracy, precision, recall, f1, model,
// baseline, improvement, error_reduction.
std::string ReportToTsv(const std::string& model, const MetricReport& report,
                        const std::map<std::string, double>& baselines);

// Majority-variant share of each set.
std::map<std::string, double> MajorityBaselines(std::span<const AmbiguousSet> sets);

struct FullTextScores {
  double accuracy = 0.0;
  double precision = 0.0;  // count-weighted macro over gold wordkeys
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t words = 0;
  std::uint64_t correct = 0;
};

struct FullTextReport {
  FullTextScores restored;
  FullTextScores baseline;  // gold vs its own stripped text
  std::vector<bool> line_has_error;
  std::uint64_t lines_with_errors = 0;
};

// Token-aligned comparison over word tokens, on NFC forms. Throws DataError
// naming the first line whose token counts differ.
FullTextReport FullTextEval(const Corpus& restored, const Corpus& gold);

nlohmann::ordered_json FullTextToJson(const FullTextReport& report);

}  // namespace diacres

#endif  // DIACRES_EVALUATE_H_
