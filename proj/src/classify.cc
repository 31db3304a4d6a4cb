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

#include "diacres/classify.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "diacres/corpus.h"
#include "diacres/dataset.h"
#include "diacres/error.h"

namespace diacres {
namespace {

double Dot(std::span<const double> w, const SparseVector& x) {
  double z = 0.0;
  for (const auto& [j, v] : x) z += w[j] * v;
  return z;
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(-m)) without overflow.
double LogOnePlusExpNeg(double m) {
  if (m > 0) return std::log1p(std::exp(-m));
  return -m + std::log1p(std::exp(m));
}

void CheckDims(std::span<const SparseVector> xs, std::size_t dim) {
  for (const SparseVector& x : xs) {
    for (const auto& [j, v] : x) {
      if (j >= dim) throw ParamError("feature index exceeds dimension");
    }
  }
}

std::vector<std::size_t> Order(std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

// Rate r, update w <- w + r (y - yhat) x with yhat = [w.x + b > 0].
std::size_t PerceptronEpoch(const std::vector<std::size_t>& order,
                            std::span<const SparseVector> xs,
                            const std::vector<int>& targets, double rate,
                            std::vector<double>& w, double& b) {
  std::size_t errors = 0;
  for (std::size_t i : order) {
    const int y = targets[i];
    const int yhat = Dot(w, xs[i]) + b > 0 ? 1 : 0;
    if (y == yhat) continue;
    ++errors;
    const double step = rate * (y - yhat);
    for (const auto& [j, v] : xs[i]) w[j] += step * v;
    b += step;
  }
  return errors;
}

// Per-example SGD on a regularised convex loss. The weight vector is kept
// as scale * v so the L2 shrink is O(1) per step.
template <typename LossSlope>
std::size_t SgdEpoch(const std::vector<std::size_t>& order,
                     std::span<const SparseVector> xs,
                     const std::vector<int>& targets, const Hyper& h,
                     std::vector<double>& v, double& scale, double& b,
                     LossSlope slope) {
  std::size_t errors = 0;
  for (std::size_t i : order) {
    const int y = targets[i] ? 1 : -1;
    const double z = scale * Dot(v, xs[i]) + b;
    if (y * z <= 0) ++errors;
    const double g = slope(y, z);  // d loss / d z
    scale *= 1.0 - h.learning_rate * h.l2;
    if (scale < 1e-9) {
      for (double& vj : v) vj *= scale;
      scale = 1.0;
    }
    if (g != 0.0) {
      const double step = h.learning_rate * g / scale;
      for (const auto& [j, val] : xs[i]) v[j] -= step * val;
      b -= h.learning_rate * g;
    }
  }
  return errors;
}

}  // namespace

StickyWindow ExtractWindow(std::span<const std::string> tokens,
                           std::size_t target, int window_size) {
  if (target >= tokens.size()) throw ParamError("target index out of range");
  if (window_size != 0 && (window_size < 3 || window_size % 2 == 0)) {
    throw ParamError("window size must be odd and >= 3, or 0");
  }
  std::vector<std::size_t> words;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i == target) {
      pos = words.size();
      words.push_back(i);
    } else if (ClassifyToken(tokens[i]) == TokenKind::kWord) {
      words.push_back(i);
    }
  }
  std::size_t begin = 0;
  std::size_t end = words.size();
  if (window_size != 0 && words.size() > static_cast<std::size_t>(window_size)) {
    const auto n = static_cast<std::size_t>(window_size);
    const std::size_t half = n / 2;
    begin = pos >= half ? pos - half : 0;
    begin = std::min(begin, words.size() - n);
    end = begin + n;
  }
  StickyWindow w;
  for (std::size_t k = begin; k < end; ++k) {
    if (k == pos) continue;
    w.indices.push_back(words[k]);
    w.context.push_back(tokens[words[k]]);
  }
  return w;
}

Vectorizer Vectorizer::Fit(std::span<const StickyWindow> windows) {
  Vectorizer v;
  std::map<std::string, std::uint64_t> df;
  for (const StickyWindow& w : windows) {
    std::vector<std::string> terms = w.context;
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    for (const std::string& t : terms) ++df[t];
  }
  const double n = static_cast<double>(windows.size());
  std::uint32_t col = 0;
  for (const auto& [term, d] : df) {
    v.vocabulary_.emplace(term, col++);
    v.idf_.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(d))) + 1.0);
  }
  return v;
}

SparseVector Vectorizer::Transform(const StickyWindow& window) const {
  std::map<std::uint32_t, double> tf;
  for (const std::string& t : window.context) {
    auto it = vocabulary_.find(t);
    if (it != vocabulary_.end()) tf[it->second] += 1.0;
  }
  SparseVector x;
  x.reserve(tf.size());
  double norm2 = 0.0;
  for (const auto& [j, c] : tf) {
    const double val = c * idf_[j];
    x.emplace_back(j, val);
    norm2 += val * val;
  }
  if (norm2 > 0.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& [j, val] : x) val *= inv;
  }
  return x;
}

nlohmann::ordered_json Vectorizer::ToJson() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json vocab = nlohmann::ordered_json::object();
  for (const auto& [term, col] : vocabulary_) vocab[term] = col;
  j["vocabulary"] = std::move(vocab);
  j["idf"] = idf_;
  return j;
}

Vectorizer Vectorizer::FromJson(const nlohmann::json& j) {
  Vectorizer v;
  try {
    for (const auto& [term, col] : j.at("vocabulary").items()) {
      v.vocabulary_.emplace(term, col.get<std::uint32_t>());
    }
    v.idf_ = j.at("idf").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed vectorizer: ") + e.what());
  }
  for (const auto& [term, col] : v.vocabulary_) {
    if (col >= v.idf_.size()) throw ModelError("vocabulary column out of range");
  }
  return v;
}

const char* ClassifierKindName(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::kPerceptron:
      return "perceptron";
    case ClassifierKind::kLogisticSgd:
      return "logistic";
    case ClassifierKind::kLinearSvmSgd:
      return "svm";
    case ClassifierKind::kMultinomialNb:
      return "nb";
  }
  return "logistic";
}

ClassifierKind ParseClassifierKind(const std::string& name) {
  for (ClassifierKind k :
       {ClassifierKind::kPerceptron, ClassifierKind::kLogisticSgd,
        ClassifierKind::kLinearSvmSgd, ClassifierKind::kMultinomialNb}) {
    if (name == ClassifierKindName(k)) return k;
  }
  throw ParamError("unknown classifier kind: " + name);
}

Hyper DefaultHyper(ClassifierKind kind) {
  Hyper h;
  h.learning_rate = kind == ClassifierKind::kPerceptron ? 0.1 : 0.01;
  return h;
}

double LogisticLoss(std::span<const double> w, double b, const SparseVector& x,
                    int y, double l2) {
  const double z = Dot(w, x) + b;
  double reg = 0.0;
  for (double wj : w) reg += wj * wj;
  return LogOnePlusExpNeg(y * z) + 0.5 * l2 * reg;
}

std::vector<double> LogisticGradient(std::span<const double> w, double b,
                                     const SparseVector& x, int y, double l2) {
  const double z = Dot(w, x) + b;
  const double g = -y * Sigmoid(-y * z);
  std::vector<double> grad(w.size() + 1);
  for (std::size_t j = 0; j < w.size(); ++j) grad[j] = l2 * w[j];
  for (const auto& [j, v] : x) grad[j] += g * v;
  grad[w.size()] = g;
  return grad;
}

LinearModel TrainClassifier(ClassifierKind kind, std::span<const SparseVector> xs,
                            std::span<const std::string> ys, std::size_t dim,
                            const Hyper& hyper,
                            std::vector<std::size_t>* epoch_errors) {
  if (xs.size() != ys.size()) throw ParamError("X and y differ in length");
  if (xs.empty()) throw ParamError("no training examples");
  CheckDims(xs, dim);

  LinearModel m;
  m.kind_ = kind;
  m.dim_ = dim;
  m.hyper_ = hyper;
  std::map<std::string, std::uint64_t> counts;
  for (const std::string& y : ys) ++counts[y];
  if (counts.size() < 2) {
    throw ModelError("degenerate training data: a single class");
  }
  for (const auto& [c, n] : counts) {
    m.classes_.push_back(c);
    m.class_counts_.push_back(n);
  }
  const std::size_t nc = m.classes_.size();
  std::vector<std::size_t> label(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    label[i] = static_cast<std::size_t>(
        std::lower_bound(m.classes_.begin(), m.classes_.end(), ys[i]) -
        m.classes_.begin());
  }
  m.weights_.assign(nc, std::vector<double>(dim, 0.0));
  m.bias_.assign(nc, 0.0);

  if (kind == ClassifierKind::kMultinomialNb) {
    const double n = static_cast<double>(ys.size());
    for (std::size_t c = 0; c < nc; ++c) {
      std::vector<double> fc(dim, 0.0);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (label[i] != c) continue;
        for (const auto& [j, v] : xs[i]) fc[j] += v;
      }
      const double total = std::accumulate(fc.begin(), fc.end(), 0.0) +
                           hyper.alpha * static_cast<double>(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        m.weights_[c][j] = std::log((fc[j] + hyper.alpha) / total);
      }
      m.bias_[c] = std::log(static_cast<double>(m.class_counts_[c]) / n);
    }
    return m;
  }

  std::mt19937_64 rng(hyper.seed);
  std::vector<std::size_t> order = Order(xs.size());
  std::vector<std::vector<int>> targets(nc, std::vector<int>(xs.size()));
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t i = 0; i < xs.size(); ++i) targets[c][i] = label[i] == c;
  }
  std::vector<double> scale(nc, 1.0);
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t errors = 0;
    for (std::size_t c = 0; c < nc; ++c) {
      switch (kind) {
        case ClassifierKind::kPerceptron:
          errors += PerceptronEpoch(order, xs, targets[c], hyper.learning_rate,
                                    m.weights_[c], m.bias_[c]);
          break;
        case ClassifierKind::kLogisticSgd:
          errors += SgdEpoch(order, xs, targets[c], hyper, m.weights_[c],
                             scale[c], m.bias_[c], [](int y, double z) {
                               return -y * Sigmoid(-y * z);
                             });
          break;
        case ClassifierKind::kLinearSvmSgd:
          errors += SgdEpoch(order, xs, targets[c], hyper, m.weights_[c],
                             scale[c], m.bias_[c], [](int y, double z) {
                               return y * z < 1.0 ? -static_cast<double>(y)
                                                  : 0.0;
                             });
          break;
        case ClassifierKind::kMultinomialNb:
          break;
      }
    }
    if (epoch_errors != nullptr) epoch_errors->push_back(errors);
    // A mistake-free perceptron epoch makes no further updates.
    if (kind == ClassifierKind::kPerceptron && errors == 0) break;
  }
  for (std::size_t c = 0; c < nc; ++c) {
    for (double& w : m.weights_[c]) w *= scale[c];
  }
  return m;
}

std::vector<double> LinearModel::PredictScores(const SparseVector& x) const {
  for (const auto& [j, v] : x) {
    if (j >= dim_) throw ParamError("feature index exceeds model dimension");
  }
  std::vector<double> scores(classes_.size());
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    scores[c] = Dot(weights_[c], x) + bias_[c];
  }
  return scores;
}

std::size_t LinearModel::PredictIndex(const SparseVector& x) const {
  const std::vector<double> scores = PredictScores(x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c) {
    if (scores[c] > scores[best] ||
        (scores[c] == scores[best] && class_counts_[c] > class_counts_[best])) {
      best = c;
    }
  }
  return best;
}

std::string LinearModel::Predict(const SparseVector& x) const {
  return classes_[PredictIndex(x)];
}

nlohmann::ordered_json LinearModel::ToJson() const {
  nlohmann::ordered_json j;
  j["kind"] = ClassifierKindName(kind_);
  j["classes"] = classes_;
  j["class_counts"] = class_counts_;
  j["dim"] = dim_;
  nlohmann::ordered_json h;
  h["learning_rate"] = hyper_.learning_rate;
  h["epochs"] = hyper_.epochs;
  h["l2"] = hyper_.l2;
  h["alpha"] = hyper_.alpha;
  h["seed"] = hyper_.seed;
  j["hyper"] = std::move(h);
  if (kind_ == ClassifierKind::kMultinomialNb) {
    j["nb_params"] = {{"log_priors", bias_}, {"log_likelihoods", weights_}};
  } else {
    j["weights"] = weights_;
    j["bias"] = bias_;
  }
  return j;
}

LinearModel LinearModel::FromJson(const nlohmann::json& j) {
  LinearModel m;
  try {
    m.kind_ = ParseClassifierKind(j.at("kind").get<std::string>());
    m.classes_ = j.at("classes").get<std::vector<std::string>>();
    m.class_counts_ = j.at("class_counts").get<std::vector<std::uint64_t>>();
    m.dim_ = j.at("dim").get<std::size_t>();
    const auto& h = j.at("hyper");
    m.hyper_.learning_rate = h.at("learning_rate").get<double>();
    m.hyper_.epochs = h.at("epochs").get<int>();
    m.hyper_.l2 = h.at("l2").get<double>();
    m.hyper_.alpha = h.at("alpha").get<double>();
    m.hyper_.seed = h.at("seed").get<std::uint64_t>();
    if (m.kind_ == ClassifierKind::kMultinomialNb) {
      m.bias_ = j.at("nb_params").at("log_priors").get<std::vector<double>>();
      m.weights_ = j.at("nb_params")
                       .at("log_likelihoods")
                       .get<std::vector<std::vector<double>>>();
    } else {
      m.weights_ = j.at("weights").get<std::vector<std::vector<double>>>();
      m.bias_ = j.at("bias").get<std::vector<double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed classifier: ") + e.what());
  }
  const std::size_t nc = m.classes_.size();
  if (m.class_counts_.size() != nc || m.weights_.size() != nc ||
      m.bias_.size() != nc) {
    throw ModelError("classifier arrays disagree with class count");
  }
  for (const auto& w : m.weights_) {
    if (w.size() != m.dim_) throw ModelError("weight vector length != dim");
  }
  return m;
}

std::string WordkeyClassifier::Predict(std::span<const std::string> tokens,
                                       std::size_t target) const {
  return model.Predict(
      vectorizer.Transform(ExtractWindow(tokens, target, window_size)));
}

nlohmann::ordered_json WordkeyClassifier::ToJson() const {
  nlohmann::ordered_json j = model.ToJson();
  j["window"] = window_size;
  const auto v = vectorizer.ToJson();
  j["vocabulary"] = v["vocabulary"];
  j["idf"] = v["idf"];
  return j;
}

WordkeyClassifier WordkeyClassifier::FromJson(const nlohmann::json& j) {
  WordkeyClassifier c;
  c.window_size = j.value("window", 9);
  c.vectorizer = Vectorizer::FromJson(j);
  c.model = LinearModel::FromJson(j);
  if (c.vectorizer.size() != c.model.dim()) {
    throw ModelError("vectorizer and model dimensions differ");
  }
  return c;
}

WordkeyClassifier TrainWordkeyClassifier(std::span<const Instance* const> train,
                                         ClassifierKind kind, int window_size,
                                         const Hyper& hyper) {
  WordkeyClassifier c;
  c.window_size = window_size;
  std::vector<StickyWindow> windows;
  std::vector<std::string> labels;
  windows.reserve(train.size());
  labels.reserve(train.size());
  for (const Instance* inst : train) {
    windows.push_back(ExtractWindow(inst->tokens, inst->target, window_size));
    labels.push_back(inst->label);
  }
  c.vectorizer = Vectorizer::Fit(windows);
  std::vector<SparseVector> xs;
  xs.reserve(windows.size());
  for (const StickyWindow& w : windows) xs.push_back(c.vectorizer.Transform(w));
  c.model = TrainClassifier(kind, xs, labels, c.vectorizer.size(), hyper);
  return c;
}

}  // namespace diacres
