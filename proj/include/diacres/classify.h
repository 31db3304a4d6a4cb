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

// Context-window features, tf-idf vectorization and linear classifiers.

#ifndef DIACRES_CLASSIFY_H_
#define DIACRES_CLASSIFY_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace diacres {

// Context words picked by the sticky window.
struct StickyWindow {
  std::vector<std::string> context;
  // Positions of the context words in the source sentence.
  std::vector<std::size_t> indices;
};

// Non-word tokens (punctuation, digits, symbols) are removed first; the
// window of min(n, len) words is then centred on the target where possible
// and clamped to the sentence ends otherwise. The target is dropped from
// the context. window_size 0 selects the whole sentence. Throws ParamError
// for a target out of range or a window that is not odd and >= 3.
StickyWindow ExtractWindow(std::span<const std::string> tokens,
                           std::size_t target, int window_size);

// Sparse vector: (column, value) pairs sorted by column.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

// Smoothed tf-idf with L2 row normalisation:
// idf(t) = ln((1 + N) / (1 + df(t))) + 1.
class Vectorizer {
 public:
  Vectorizer() = default;

  static Vectorizer Fit(std::span<const StickyWindow> windows);

  // Unknown terms are dropped. Zero rows stay zero.
  SparseVector Transform(const StickyWindow& window) const;

  std::size_t size() const { return idf_.size(); }
  const std::map<std::string, std::uint32_t>& vocabulary() const {
    return vocabulary_;
  }
  const std::vector<double>& idf() const { return idf_; }

  nlohmann::ordered_json ToJson() const;
  static Vectorizer FromJson(const nlohmann::json& j);

 private:
  std::map<std::string, std::uint32_t> vocabulary_;
  std::vector<double> idf_;
};

enum class ClassifierKind { kPerceptron, kLogisticSgd, kLinearSvmSgd, kMultinomialNb };

const char* ClassifierKindName(ClassifierKind kind);
ClassifierKind ParseClassifierKind(const std::string& name);

struct Hyper {
  double learning_rate = 0.01;
  int epochs = 20;
  double l2 = 1e-4;
  double alpha = 1.0;  // Laplace smoothing for naive Bayes
  std::uint64_t seed = 1;

  bool operator==(const Hyper&) const = default;
};

// Defaults per kind: 0.1 for the perceptron rate, 0.01 for SGD kinds.
Hyper DefaultHyper(ClassifierKind kind);

class LinearModel {
 public:
  ClassifierKind kind() const { return kind_; }
  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<std::uint64_t>& class_counts() const { return class_counts_; }
  std::size_t dim() const { return dim_; }
  const Hyper& hyper() const { return hyper_; }
  const std::vector<std::vector<double>>& weights() const { return weights_; }
  const std::vector<double>& bias() const { return bias_; }

  // Decision values for linear kinds, joint log-probabilities for naive
  // Bayes. Throws ParamError on a dimension mismatch.
  std::vector<double> PredictScores(const SparseVector& x) const;
  // Argmax of the scores; ties go to the more frequent training class,
  // then to the lexicographically smaller one.
  std::string Predict(const SparseVector& x) const;
  std::size_t PredictIndex(const SparseVector& x) const;

  bool operator==(const LinearModel&) const = default;

  nlohmann::ordered_json ToJson() const;
  static LinearModel FromJson(const nlohmann::json& j);

 private:
  friend LinearModel TrainClassifier(ClassifierKind, std::span<const SparseVector>,
                                     std::span<const std::string>, std::size_t,
                                     const Hyper&, std::vector<std::size_t>*);

  ClassifierKind kind_ = ClassifierKind::kLogisticSgd;
  std::vector<std::string> classes_;  // sorted
  std::vector<std::uint64_t> class_counts_;
  std::size_t dim_ = 0;
  Hyper hyper_;
  // Linear kinds: per-class weights and bias. Naive Bayes: per-class term
  // log-likelihoods and log-priors.
  std::vector<std::vector<double>> weights_;
  std::vector<double> bias_;
};

// One-vs-rest for the linear kinds; multinomial for naive Bayes. Training
// order is shuffled per epoch from `hyper.seed`. Throws ModelError if fewer
// than two classes are present, ParamError on size mismatches.
// `epoch_errors`, when given, receives the number of binary mistakes made
// in each epoch (linear kinds only).
LinearModel TrainClassifier(ClassifierKind kind, std::span<const SparseVector> xs,
                            std::span<const std::string> ys, std::size_t dim,
                            const Hyper& hyper,
                            std::vector<std::size_t>* epoch_errors = nullptr);

// Binary logistic loss log(1 + exp(-y z)) + l2/2 |w|^2 with z = w.x + b and
// y in {-1, +1}, and its gradient (w then b). Exposed for checking.
double LogisticLoss(std::span<const double> w, double b, const SparseVector& x,
                    int y, double l2);
std::vector<double> LogisticGradient(std::span<const double> w, double b,
                                     const SparseVector& x, int y, double l2);

// Per-wordkey classifier restorer: window, vectorizer and model.
struct WordkeyClassifier {
  int window_size = 9;
  Vectorizer vectorizer;
  LinearModel model;

  std::string Predict(std::span<const std::string> tokens,
                      std::size_t target) const;

  nlohmann::ordered_json ToJson() const;
  static WordkeyClassifier FromJson(const nlohmann::json& j);
};

struct Instance;

WordkeyClassifier TrainWordkeyClassifier(std::span<const Instance* const> train,
                                         ClassifierKind kind, int window_size,
                                         const Hyper& hyper);

}  // namespace diacres

#endif  // DIACRES_CLASSIFY_H_
