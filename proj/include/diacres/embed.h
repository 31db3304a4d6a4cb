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

#ifndef DIACRES_EMBED_H_
#define DIACRES_EMBED_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "diacres/dataset.h"

namespace diacres {

// Word -> dense vector, all of one dimension. Rows keep insertion order.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  explicit EmbeddingModel(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }

  bool Contains(const std::string& word) const { return index_.count(word) != 0; }
  // Empty span when absent.
  std::span<const double> Vector(const std::string& word) const;
  std::span<const double> Row(std::size_t i) const;

  // Inserts or overwrites. Throws ParamError on a length mismatch.
  void Set(const std::string& word, std::span<const double> vec);

  bool operator==(const EmbeddingModel& other) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> words_;
  std::vector<double> data_;  // row-major, size() x dim()
  std::unordered_map<std::string, std::size_t> index_;
};

// word2vec text format: "V D" header, then V rows "word f1 ... fD".
// Words are NFC-normalised. Throws ParseError with the line number.
EmbeddingModel LoadVectors(std::istream& in);
EmbeddingModel LoadVectors(const std::string& path);
// Shortest round-trip decimal formatting, so Load(Save(m)) == m.
void SaveVectors(const EmbeddingModel& model, std::ostream& out);
void SaveVectors(const EmbeddingModel& model, const std::string& path);

double Cosine(std::span<const double> a, std::span<const double> b);

// target word -> (source word, count) pairs.
struct AlignmentDictionary {
  std::map<std::string, std::vector<std::pair<std::string, std::uint64_t>>> entries;
};

// TSV: target<TAB>source<TAB>count, count > 0.
AlignmentDictionary LoadAlignment(std::istream& in);
AlignmentDictionary LoadAlignment(const std::string& path);

// vec(t) = sum(c_j vec(s_j)) / sum(c_j) over aligned source words present in
// `source`. Targets with no resolvable source word are omitted. Output rows
// are in target order. Throws ModelError if nothing projects.
EmbeddingModel Project(const EmbeddingModel& source,
                       const AlignmentDictionary& align);
EmbeddingModel ProjectSerial(const EmbeddingModel& source,
                             const AlignmentDictionary& align);

// Per-variant exclusive co-occurring words with their counts.
struct CowordTable {
  std::map<std::string, std::vector<std::pair<std::string, std::uint64_t>>> cowords;

  const std::vector<std::pair<std::string, std::uint64_t>>* Find(
      const std::string& variant) const;
};

// Counts the context words of every instance per label (window_size 0 for
// the whole sentence), keeps each variant's top_n by count (ties
// lexicographic), then removes words that are in any sibling variant's
// top-n set.
CowordTable BuildCowords(std::span<const AmbiguousSet> sets, std::size_t top_n,
                         int window_size);
CowordTable BuildCowords(const AmbiguousSet& set,
                         std::span<const Instance* const> instances,
                         std::size_t top_n, int window_size);

nlohmann::ordered_json CowordsToJson(const CowordTable& table);
CowordTable CowordsFromJson(const nlohmann::json& j);

enum class Scheme { kBasic, kTweak1, kTweak2, kTweak3 };
const char* SchemeName(Scheme scheme);
Scheme ParseScheme(const std::string& name);

// Finds the vector for a (stripped) word: the word itself, else its marked
// form from the lexicon's unambiguous map. Empty span when neither exists.
std::span<const double> ResolveVector(const EmbeddingModel& model,
                                      const Lexicon* lexicon,
                                      const std::string& word);

struct EnhanceResult {
  EmbeddingModel model;
  std::vector<std::string> warnings;  // skipped variants
};

// Basic copies. With m(v) the weighted mean of v's coword vectors, Tweak1
// and Tweak2 set vec(v) = (vec(v) + m(v)) / 2, Tweak3 sets vec(v) = m(v).
// Only variant rows change. Variants without a vector or without any coword
// vector are skipped with a warning.
// Enhanced row of one variant given its coword list; nullopt when the
// variant has no vector or (for the tweaks) no coword has one.
std::optional<std::vector<double>> EnhancedVector(
    const EmbeddingModel& model, const std::string& variant,
    const std::vector<std::pair<std::string, std::uint64_t>>& words,
    Scheme scheme, const Lexicon* lexicon = nullptr, bool count_weighted = true);

EnhanceResult Enhance(const EmbeddingModel& model, const CowordTable& cowords,
                      Scheme scheme, const Lexicon* lexicon = nullptr,
                      bool count_weighted = true);

struct EmbeddingChoice {
  std::string variant;
  // Some candidate was scored by its unigram share (no vector or no
  // context of its own).
  bool prior_fallback = false;
  // No usable context at all; the majority variant was returned.
  bool empty_context = false;
};

// Cosine-similarity restorer over an (enhanced) model.
class EmbeddingRestorer {
 public:
  EmbeddingRestorer(const EmbeddingModel* model, const Lexicon* lexicon,
                    const CowordTable* cowords, Scheme scheme, int window_size)
      : model_(model),
        lexicon_(lexicon),
        cowords_(cowords),
        scheme_(scheme),
        window_size_(window_size) {}

  // Throws ModelError for an unknown wordkey or when no candidate has a
  // vector.
  EmbeddingChoice Restore(std::span<const std::string> tokens,
                          std::size_t target) const;

  // Restore() with candidates and their weights given explicitly; used by
  // cross-validation where the enhanced variant rows live outside the
  // shared model.
  EmbeddingChoice Restore(
      std::span<const std::string> tokens, std::size_t target,
      const std::vector<VariantCount>& candidates,
      const std::map<std::string, std::vector<double>>* variant_override) const;

 private:
  const EmbeddingModel* model_;
  const Lexicon* lexicon_;
  const CowordTable* cowords_;
  Scheme scheme_;
  int window_size_;
};

// Word whose vector has the lowest mean cosine to the other three. If
// exactly one word is out of vocabulary it is the answer; with more, the
// item is skipped (nullopt). Ties break to the smaller word.
std::optional<std::string> OddWord(const EmbeddingModel& model,
                                   const std::vector<std::string>& words);

struct AnalogyQuad {
  std::string a, b, c, d;
};

struct AnalogyResult {
  double mrr = 0.0;
  std::size_t used = 0;     // quads with a, b, c in vocabulary
  std::size_t skipped = 0;
};

// 1-based rank of d among vocabulary words (except a, b, c) by cosine to
// vec(b) - vec(a) + vec(c); ties order lexicographically. 0 if d is out of
// vocabulary.
std::size_t AnalogyRank(const EmbeddingModel& model, const AnalogyQuad& q);

// Mean of 1/rank(d) when rank <= list_len, else 0.
AnalogyResult AnalogyMrr(const EmbeddingModel& model,
                         std::span<const AnalogyQuad> quads,
                         std::size_t list_len = 100);
AnalogyResult AnalogyMrrSerial(const EmbeddingModel& model,
                               std::span<const AnalogyQuad> quads,
                               std::size_t list_len = 100);

struct WordPair {
  std::string w1, w2;
  double score = 0.0;
};

struct WordsimResult {
  double pearson = 0.0;
  std::size_t used = 0;
};

double Pearson(std::span<const double> x, std::span<const double> y);

// Pearson r between model cosines and human scores over in-vocabulary
// pairs. Throws ModelError with fewer than two usable pairs.
WordsimResult WordsimPearson(const EmbeddingModel& model,
                             std::span<const WordPair> pairs);

struct OddWordItem {
  std::vector<std::string> words;
  std::string odd;
};

std::vector<OddWordItem> LoadOddWord(const std::string& path);
std::vector<AnalogyQuad> LoadAnalogy(const std::string& path);
std::vector<WordPair> LoadWordsim(const std::string& path);

}  // namespace diacres

#endif  // DIACRES_EMBED_H_
