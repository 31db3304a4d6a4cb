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

#ifndef DIACRES_RESTORERS_H_
#define DIACRES_RESTORERS_H_

#include <memory>
#include <span>
#include <string>

#include "diacres/classify.h"
#include "diacres/corpus.h"
#include "diacres/embed.h"
#include "diacres/evaluate.h"
#include "diacres/ngram.h"

namespace diacres {

// Predicts the most frequent training label.
class MajorityFactory : public RestorerFactory {
 public:
  std::string Name() const override { return "unigram"; }
  std::unique_ptr<SetPredictor> Train(const AmbiguousSet& set,
                                      std::span<const std::size_t> train,
                                      std::span<const std::size_t> test) const override;
};

// Scores an n-gram model trained on every corpus line except those holding
// a test instance. `full` must be trained on `corpus`; instances need their
// source line.
class NGramFactory : public RestorerFactory {
 public:
  NGramFactory(const Corpus* corpus, const NGramModel* full, int n)
      : corpus_(corpus), full_(full), n_(n) {}
  std::string Name() const override { return std::to_string(n_) + "-gram"; }
  std::unique_ptr<SetPredictor> Train(const AmbiguousSet& set,
                                      std::span<const std::size_t> train,
                                      std::span<const std::size_t> test) const override;

 private:
  const Corpus* corpus_;
  const NGramModel* full_;
  int n_;
};

class ClassifierFactory : public RestorerFactory {
 public:
  ClassifierFactory(ClassifierKind kind, int window_size, Hyper hyper)
      : kind_(kind), window_size_(window_size), hyper_(hyper) {}
  std::string Name() const override { return ClassifierKindName(kind_); }
  std::unique_ptr<SetPredictor> Train(const AmbiguousSet& set,
                                      std::span<const std::size_t> train,
                                      std::span<const std::size_t> test) const override;

 private:
  ClassifierKind kind_;
  int window_size_;
  Hyper hyper_;
};

// Cowords and enhanced variant rows are rebuilt from each training fold.
class EmbeddingFactory : public RestorerFactory {
 public:
  EmbeddingFactory(const EmbeddingModel* model, const Lexicon* lexicon,
                   Scheme scheme, int window_size, std::size_t top_n)
      : model_(model),
        lexicon_(lexicon),
        scheme_(scheme),
        window_size_(window_size),
        top_n_(top_n) {}
  std::string Name() const override {
    return std::string("embedding-") + SchemeName(scheme_);
  }
  std::unique_ptr<SetPredictor> Train(const AmbiguousSet& set,
                                      std::span<const std::size_t> train,
                                      std::span<const std::size_t> test) const override;

 private:
  const EmbeddingModel* model_;
  const Lexicon* lexicon_;
  Scheme scheme_;
  int window_size_;
  std::size_t top_n_;
};

}  // namespace diacres

#endif  // DIACRES_RESTORERS_H_
