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

#include "diacres/restorers.h"

#include <algorithm>
#include <map>
#include <vector>

#include "diacres/error.h"

namespace diacres {
namespace {

class ConstantPredictor : public SetPredictor {
 public:
  explicit ConstantPredictor(std::string label) : label_(std::move(label)) {}
  std::string Predict(const Instance&) const override { return label_; }

 private:
  std::string label_;
};

class NGramPredictor : public SetPredictor {
 public:
  NGramPredictor(const NGramModel* full, NGramModel held_out, int n)
      : full_(full), held_out_(std::move(held_out)), n_(n) {}
  std::string Predict(const Instance& inst) const override {
    return full_->RestoreInstance(inst, n_, &held_out_);
  }

 private:
  const NGramModel* full_;
  NGramModel held_out_;
  int n_;
};

class ClassifierPredictor : public SetPredictor {
 public:
  explicit ClassifierPredictor(WordkeyClassifier clf) : clf_(std::move(clf)) {}
  std::string Predict(const Instance& inst) const override {
    return clf_.Predict(inst.tokens, inst.target);
  }

 private:
  WordkeyClassifier clf_;
};

class EmbeddingPredictor : public SetPredictor {
 public:
  EmbeddingPredictor(const EmbeddingModel* model, const Lexicon* lexicon,
                     CowordTable cowords, Scheme scheme, int window,
                     std::vector<VariantCount> candidates,
                     std::map<std::string, std::vector<double>> rows)
      : cowords_(std::move(cowords)),
        candidates_(std::move(candidates)),
        rows_(std::move(rows)),
        restorer_(model, lexicon, &cowords_, scheme, window) {}
  std::string Predict(const Instance& inst) const override {
    return restorer_.Restore(inst.tokens, inst.target, candidates_, &rows_).variant;
  }

 private:
  CowordTable cowords_;
  std::vector<VariantCount> candidates_;
  std::map<std::string, std::vector<double>> rows_;
  EmbeddingRestorer restorer_;
};

std::string MajorityOf(const AmbiguousSet& set, std::span<const std::size_t> idx) {
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

std::vector<const Instance*> Select(const AmbiguousSet& set,
                                    std::span<const std::size_t> idx) {
  std::vector<const Instance*> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(&set.instances[i]);
  return out;
}

}  // namespace

std::unique_ptr<SetPredictor> MajorityFactory::Train(
    const AmbiguousSet& set, std::span<const std::size_t> train,
    std::span<const std::size_t>) const {
  if (train.empty()) throw ModelError("empty training fold");
  return std::make_unique<ConstantPredictor>(MajorityOf(set, train));
}

std::unique_ptr<SetPredictor> NGramFactory::Train(
    const AmbiguousSet& set, std::span<const std::size_t> train,
    std::span<const std::size_t> test) const {
  // Training on all data (too few instances to fold) keeps every line.
  const bool same = std::equal(train.begin(), train.end(), test.begin(), test.end());
  std::vector<std::size_t> lines;
  if (!same) {
    for (std::size_t i : test) {
      const std::int64_t line = set.instances[i].line;
      if (line < 0) throw DataError("instance without a source line");
      lines.push_back(static_cast<std::size_t>(line));
    }
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  }
  NGramModel held_out = TrainNGramOnLines(*corpus_, lines, full_->max_n(),
                                          full_->lexicon(),
                                          full_->include_nonwords());
  return std::make_unique<NGramPredictor>(full_, std::move(held_out), n_);
}

std::unique_ptr<SetPredictor> ClassifierFactory::Train(
    const AmbiguousSet& set, std::span<const std::size_t> train,
    std::span<const std::size_t>) const {
  const auto instances = Select(set, train);
  return std::make_unique<ClassifierPredictor>(
      TrainWordkeyClassifier(instances, kind_, window_size_, hyper_));
}

std::unique_ptr<SetPredictor> EmbeddingFactory::Train(
    const AmbiguousSet& set, std::span<const std::size_t> train,
    std::span<const std::size_t>) const {
  const auto instances = Select(set, train);
  CowordTable cowords = BuildCowords(set, instances, top_n_, window_size_);
  std::map<std::string, std::uint64_t> counts;
  for (const Instance* inst : instances) ++counts[inst->label];
  std::vector<VariantCount> candidates;
  std::map<std::string, std::vector<double>> rows;
  for (const VariantCount& v : set.variants) {
    candidates.push_back({v.surface, counts[v.surface]});
    if (scheme_ == Scheme::kBasic) continue;
    const auto* words = cowords.Find(v.surface);
    if (words == nullptr) continue;
    if (auto row = EnhancedVector(*model_, v.surface, *words, scheme_, lexicon_)) {
      rows[v.surface] = std::move(*row);
    }
  }
  return std::make_unique<EmbeddingPredictor>(model_, lexicon_, std::move(cowords),
                                              scheme_, window_size_,
                                              std::move(candidates), std::move(rows));
}

}  // namespace diacres
