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

#include "diacres/evaluate.h"

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>

#include "diacres/error.h"
#include "diacres/unicode.h"

namespace diacres {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes)
    : classes_(std::move(classes)),
      cells_(classes_.size() * classes_.size(), 0) {}

std::size_t ConfusionMatrix::IndexOf(const std::string& label) const {
  auto it = std::find(classes_.begin(), classes_.end(), label);
  return it == classes_.end() ? std::string::npos
                              : static_cast<std::size_t>(it - classes_.begin());
}

std::size_t ConfusionMatrix::EnsureClass(const std::string& label) {
  const std::size_t idx = IndexOf(label);
  if (idx != std::string::npos) return idx;
  const std::size_t n = classes_.size();
  std::vector<std::uint64_t> grown((n + 1) * (n + 1), 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) grown[r * (n + 1) + c] = cells_[r * n + c];
  }
  cells_ = std::move(grown);
  classes_.push_back(label);
  return n;
}

void ConfusionMatrix::Add(const std::string& truth, const std::string& predicted) {
  const std::size_t t = EnsureClass(truth);
  const std::size_t p = EnsureClass(predicted);
  ++at(t, p);
}

void ConfusionMatrix::Merge(const ConfusionMatrix& other) {
  for (std::size_t r = 0; r < other.classes_.size(); ++r) {
    for (std::size_t c = 0; c < other.classes_.size(); ++c) {
      const std::uint64_t v = other.at(r, c);
      const std::size_t rr = EnsureClass(other.classes_[r]);
      const std::size_t cc = EnsureClass(other.classes_[c]);
      at(rr, cc) += v;
    }
  }
}

std::uint64_t ConfusionMatrix::Total() const {
  std::uint64_t t = 0;
  for (std::uint64_t v : cells_) t += v;
  return t;
}

std::uint64_t ConfusionMatrix::Trace() const {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < classes_.size(); ++i) t += at(i, i);
  return t;
}

Metrics ComputeMetrics(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.Total();
  if (total == 0) throw ParamError("metrics of an empty confusion matrix");
  const std::size_t n = cm.classes().size();
  Metrics m;
  m.accuracy = static_cast<double>(cm.Trace()) / static_cast<double>(total);
  for (std::size_t c = 0; c < n; ++c) {
    std::uint64_t tp = cm.at(c, c);
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    for (std::size_t o = 0; o < n; ++o) {
      row += cm.at(c, o);
      col += cm.at(o, c);
    }
    ClassMetrics k;
    k.support = row;
    k.precision = col ? static_cast<double>(tp) / static_cast<double>(col) : 0.0;
    k.recall = row ? static_cast<double>(tp) / static_cast<double>(row) : 0.0;
    k.f1 = k.precision + k.recall > 0.0
               ? 2.0 * k.precision * k.recall / (k.precision + k.recall)
               : 0.0;
    m.macro_precision += k.precision;
    m.macro_recall += k.recall;
    m.macro_f1 += k.f1;
    m.per_class.push_back(k);
  }
  m.macro_precision /= static_cast<double>(n);
  m.macro_recall /= static_cast<double>(n);
  m.macro_f1 /= static_cast<double>(n);
  return m;
}

std::vector<std::vector<std::size_t>> StratifiedFolds(
    std::span<const std::string> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ParamError("need at least 2 folds");
  if (labels.size() < k) {
    throw ParamError("fewer instances (" + std::to_string(labels.size()) +
                     ") than folds (" + std::to_string(k) + ")");
  }
  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(i);
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t next = 0;  // carried across labels to balance fold sizes
  for (auto& [label, idx] : by_label) {
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t i : idx) {
      folds[next].push_back(i);
      next = (next + 1) % k;
    }
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

namespace {

std::string MajorityLabel(const AmbiguousSet& set, std::span<const std::size_t> idx) {
  std::map<std::string, std::size_t> counts;
  for (std::size_t i : idx) ++counts[set.instances[i].label];
  std::string best;
  std::size_t best_n = 0;
  for (const auto& [label, n] : counts) {
    if (n > best_n) {
      best = label;
      best_n = n;
    }
  }
  return best;
}

}  // namespace

CvResult CrossValidate(const RestorerFactory& factory, const AmbiguousSet& set,
                       std::size_t k, std::uint64_t seed) {
  CvResult r;
  r.wordkey = set.wordkey;
  r.matrix = ConfusionMatrix(set.Classes());
  std::vector<std::string> labels;
  labels.reserve(set.instances.size());
  for (const Instance& inst : set.instances) labels.push_back(inst.label);
  if (labels.empty()) return r;

  std::vector<std::vector<std::size_t>> folds;
  if (labels.size() < k) {
    r.train_on_all = true;
    r.warnings.push_back("fewer instances than folds; trained and tested on all");
    std::vector<std::size_t> all(labels.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    folds.push_back(std::move(all));
  } else {
    folds = StratifiedFolds(labels, k, seed);
  }

  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto& test = folds[f];
    std::vector<std::size_t> train;
    if (r.train_on_all) {
      train = test;
    } else {
      for (std::size_t g = 0; g < folds.size(); ++g) {
        if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
      }
      std::sort(train.begin(), train.end());
    }
    std::unique_ptr<SetPredictor> predictor;
    try {
      predictor = factory.Train(set, train, test);
    } catch (const Error& e) {
      r.warnings.push_back("fold " + std::to_string(f) + " failed: " + e.what());
    }
    const std::string fallback = MajorityLabel(set, train);
    std::size_t correct = 0;
    for (std::size_t i : test) {
      const Instance& inst = set.instances[i];
      std::string pred = fallback;
      if (predictor) {
        try {
          pred = predictor->Predict(inst);
        } catch (const ModelError& e) {
          r.warnings.push_back("fold " + std::to_string(f) + " instance " +
                               std::to_string(i) + ": " + e.what());
        }
      }
      correct += pred == inst.label;
      r.matrix.Add(inst.label, pred);
    }
    r.fold_accuracy.push_back(test.empty() ? 0.0
                                           : static_cast<double>(correct) /
                                                 static_cast<double>(test.size()));
  }
  return r;
}

std::vector<CvResult> CrossValidateAllSerial(const RestorerFactory& factory,
                                             std::span<const AmbiguousSet> sets,
                                             std::size_t k, std::uint64_t seed) {
  std::vector<CvResult> out;
  out.reserve(sets.size());
  for (const AmbiguousSet& s : sets) out.push_back(CrossValidate(factory, s, k, seed));
  return out;
}

std::vector<CvResult> CrossValidateAll(const RestorerFactory& factory,
                                       std::span<const AmbiguousSet> sets,
                                       std::size_t k, std::uint64_t seed) {
  std::vector<CvResult> out(sets.size());
  std::vector<std::string> errors(sets.size());
  const auto n = static_cast<std::int64_t>(sets.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto s = static_cast<std::size_t>(i);
    try {
      out[s] = CrossValidate(factory, sets[s], k, seed);
    } catch (const std::exception& e) {
      errors[s] = e.what();
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) throw Error(e);
  }
  return out;
}

WordkeyScore ScoreOf(const ConfusionMatrix& cm) {
  const Metrics m = ComputeMetrics(cm);
  return {m.accuracy, m.macro_precision, m.macro_recall, m.macro_f1, cm.Total()};
}

MetricReport Aggregate(const std::map<std::string, WordkeyScore>& per_wordkey) {
  MetricReport r;
  r.per_wordkey = per_wordkey;
  double weight = 0.0;
  for (const auto& [key, s] : per_wordkey) {
    const double w = static_cast<double>(s.count);
    weight += w;
    r.weighted.accuracy += w * s.accuracy;
    r.weighted.precision += w * s.precision;
    r.weighted.recall += w * s.recall;
    r.weighted.f1 += w * s.f1;
    r.unweighted.accuracy += s.accuracy;
    r.unweighted.precision += s.precision;
    r.unweighted.recall += s.recall;
    r.unweighted.f1 += s.f1;
  }
  if (weight > 0.0) {
    r.weighted.accuracy /= weight;
    r.weighted.precision /= weight;
    r.weighted.recall /= weight;
    r.weighted.f1 /= weight;
  }
  if (!per_wordkey.empty()) {
    const auto n = static_cast<double>(per_wordkey.size());
    r.unweighted.accuracy /= n;
    r.unweighted.precision /= n;
    r.unweighted.recall /= n;
    r.unweighted.f1 /= n;
  }
  return r;
}

std::map<std::string, double> MajorityBaselines(std::span<const AmbiguousSet> sets) {
  std::map<std::string, double> out;
  for (const AmbiguousSet& s : sets) {
    std::uint64_t best = 0;
    for (const VariantCount& v : s.variants) best = std::max(best, v.count);
    const std::uint64_t total = s.Total();
    out[s.wordkey] = total ? static_cast<double>(best) / static_cast<double>(total) : 0.0;
  }
  return out;
}

namespace {

nlohmann::ordered_json AggregateJson(const AggregateScore& a) {
  nlohmann::ordered_json j;
  j["accuracy"] = a.accuracy;
  j["precision"] = a.precision;
  j["recall"] = a.recall;
  j["f1"] = a.f1;
  return j;
}

// Reconstructed columns: improvement = score - baseline and
// error_reduction = (base_err - model_err) / base_err.
void Improvement(double score, double baseline, double& improvement,
                 double& error_reduction) {
  improvement = score - baseline;
  const double base_err = 1.0 - baseline;
  error_reduction = base_err > 0.0 ? (base_err - (1.0 - score)) / base_err : 0.0;
}

}  // namespace

nlohmann::ordered_json ReportToJson(const std::string& model,
                                    std::span<const CvResult> results,
                                    const MetricReport& report,
                                    const std::map<std::string, double>& baselines) {
  nlohmann::ordered_json j;
  j["model"] = model;
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (const auto& [key, s] : report.per_wordkey) {
    nlohmann::ordered_json row;
    row["count"] = s.count;
    row["accuracy"] = s.accuracy;
    row["macro_precision"] = s.precision;
    row["macro_recall"] = s.recall;
    row["macro_f1"] = s.f1;
    if (auto it = baselines.find(key); it != baselines.end()) {
      double imp = 0.0, red = 0.0;
      Improvement(s.accuracy, it->second, imp, red);
      row["baseline"] = it->second;
      row["improvement"] = imp;
      row["error_reduction"] = red;
    }
    per[key] = std::move(row);
  }
  j["per_wordkey"] = std::move(per);
  j["aggregate"] = AggregateJson(report.weighted);
  j["aggregate_unweighted"] = AggregateJson(report.unweighted);
  nlohmann::ordered_json folds = nlohmann::ordered_json::object();
  nlohmann::ordered_json warnings = nlohmann::ordered_json::object();
  for (const CvResult& r : results) {
    folds[r.wordkey] = r.fold_accuracy;
    if (!r.warnings.empty()) warnings[r.wordkey] = r.warnings;
  }
  j["folds"] = std::move(folds);
  j["warnings"] = std::move(warnings);
  return j;
}

std::string ReportToTsv(const std::string& model, const MetricReport& report,
                        const std::map<std::string, double>& baselines) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "wordkey\tcount\taccuracy\tprecision\trecall\tf1\tmodel\tbaseline\t"
         "improvement\terror_reduction\n";
  for (const auto& [key, s] : report.per_wordkey) {
    out << key << '\t' << s.count << '\t' << s.accuracy << '\t' << s.precision
        << '\t' << s.recall << '\t' << s.f1 << '\t' << model;
    if (auto it = baselines.find(key); it != baselines.end()) {
      double imp = 0.0, red = 0.0;
      Improvement(s.accuracy, it->second, imp, red);
      out << '\t' << it->second << '\t' << imp << '\t' << red;
    } else {
      out << "\t\t\t";
    }
    out << '\n';
  }
  return out.str();
}

namespace {

FullTextScores ScoreTokens(const std::vector<std::pair<std::string, std::string>>& pairs) {
  FullTextScores s;
  std::map<std::string, ConfusionMatrix> by_key;
  for (const auto& [gold, pred] : pairs) {
    ++s.words;
    s.correct += gold == pred;
    by_key[ToLower(StripDiacritics(gold))].Add(gold, pred);
  }
  if (s.words == 0) return s;
  s.accuracy = static_cast<double>(s.correct) / static_cast<double>(s.words);
  std::map<std::string, WordkeyScore> per;
  for (const auto& [key, cm] : by_key) per[key] = ScoreOf(cm);
  const MetricReport agg = Aggregate(per);
  s.precision = agg.weighted.precision;
  s.recall = agg.weighted.recall;
  s.f1 = agg.weighted.f1;
  return s;
}

nlohmann::ordered_json ScoresJson(const FullTextScores& s) {
  nlohmann::ordered_json j;
  j["accuracy"] = s.accuracy;
  j["precision"] = s.precision;
  j["recall"] = s.recall;
  j["f1"] = s.f1;
  j["words"] = s.words;
  j["correct"] = s.correct;
  return j;
}

}  // namespace

FullTextReport FullTextEval(const Corpus& restored, const Corpus& gold) {
  if (restored.lines.size() != gold.lines.size()) {
    throw DataError("line count mismatch: restored " +
                    std::to_string(restored.lines.size()) + " vs gold " +
                    std::to_string(gold.lines.size()));
  }
  FullTextReport r;
  r.line_has_error.assign(gold.lines.size(), false);
  std::vector<std::pair<std::string, std::string>> model_pairs;
  std::vector<std::pair<std::string, std::string>> base_pairs;
  for (std::size_t li = 0; li < gold.lines.size(); ++li) {
    const Line& g = gold.lines[li];
    const Line& p = restored.lines[li];
    if (g.size() != p.size()) {
      throw DataError("token count mismatch on line " + std::to_string(li + 1));
    }
    for (std::size_t ti = 0; ti < g.size(); ++ti) {
      if (g[ti].kind != TokenKind::kWord) continue;
      const std::string gold_nfc = Normalize(g[ti].surface);
      const std::string pred_nfc = Normalize(p[ti].surface);
      if (gold_nfc != pred_nfc) r.line_has_error[li] = true;
      model_pairs.emplace_back(gold_nfc, pred_nfc);
      base_pairs.emplace_back(gold_nfc, StripDiacritics(gold_nfc));
    }
    r.lines_with_errors += r.line_has_error[li];
  }
  r.restored = ScoreTokens(model_pairs);
  r.baseline = ScoreTokens(base_pairs);
  return r;
}

nlohmann::ordered_json FullTextToJson(const FullTextReport& report) {
  nlohmann::ordered_json j;
  j["restored"] = ScoresJson(report.restored);
  j["baseline"] = ScoresJson(report.baseline);
  j["lines"] = report.line_has_error.size();
  j["lines_with_errors"] = report.lines_with_errors;
  std::vector<std::size_t> error_lines;
  for (std::size_t i = 0; i < report.line_has_error.size(); ++i) {
    if (report.line_has_error[i]) error_lines.push_back(i + 1);
  }
  j["error_lines"] = error_lines;
  return j;
}

}  // namespace diacres
