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

#ifndef DIACRES_PIPELINE_H_
#define DIACRES_PIPELINE_H_

#include <map>
#include <memory>
#include <span>
#include <string>

#include "diacres/classify.h"
#include "diacres/corpus.h"
#include "diacres/dataset.h"
#include "diacres/embed.h"
#include "diacres/ngram.h"

namespace diacres {

enum class RestorerType { kNGram, kClassifier, kEmbedding };

// What to emit when the restorer cannot decide an ambiguous word. Unknown
// words are always echoed.
enum class Fallback { kEcho, kUnigram };

const char* RestorerTypeName(RestorerType type);
Fallback ParseFallback(const std::string& name);

// A trained restorer together with the lexicon it was built from.
class Pipeline {
 public:
  Pipeline() = default;

  static Pipeline FromNGram(NGramModel model, int n);
  static Pipeline FromClassifiers(Lexicon lexicon,
                                  std::map<std::string, WordkeyClassifier> models,
                                  ClassifierKind kind, int window_size);
  static Pipeline FromEmbedding(Lexicon lexicon, EmbeddingModel vectors,
                                CowordTable cowords, Scheme scheme,
                                int window_size);

  bool loaded() const { return loaded_; }
  RestorerType type() const { return type_; }
  const Lexicon& lexicon() const { return lexicon_; }
  Fallback fallback() const { return fallback_; }
  void set_fallback(Fallback f) { fallback_ = f; }

  // Restores one line. Non-words and unknown words are echoed, unambiguous
  // words mapped, ambiguous words sent to the restorer. Casing of the
  // input token carries over. Throws ModelError if nothing is loaded.
  Line RestoreLine(const Line& line) const;

  // Lines in parallel; identical to RestoreSerial.
  Corpus Restore(const Corpus& corpus) const;
  Corpus RestoreSerial(const Corpus& corpus) const;

  // Bundle JSON. Embedding bundles keep the vectors in `path` + ".vectors".
  void Save(const std::string& path) const;
  static Pipeline Load(const std::string& path);

 private:
  std::string Key(const std::string& surface) const;
  std::string Ambiguous(std::span<const std::string> keys, std::size_t i) const;

  bool loaded_ = false;
  RestorerType type_ = RestorerType::kNGram;
  Fallback fallback_ = Fallback::kEcho;
  Lexicon lexicon_;
  // n-gram
  NGramModel ngram_;
  int n_ = 0;
  // classifier
  std::map<std::string, WordkeyClassifier> classifiers_;
  ClassifierKind kind_ = ClassifierKind::kLogisticSgd;
  // embedding
  EmbeddingModel vectors_;
  CowordTable cowords_;
  Scheme scheme_ = Scheme::kBasic;
  int window_size_ = 9;
};

}  // namespace diacres

#endif  // DIACRES_PIPELINE_H_
