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

#ifndef DIACRES_NGRAM_H_
#define DIACRES_NGRAM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "diacres/corpus.h"
#include "diacres/dataset.h"

namespace diacres {

// Count tables over (marked left context, variant) for context lengths
// 0..max_n-1. Level k holds contexts of exactly k-1 tokens; positions with
// a shorter history only contribute to the levels they can fill.
class NGramModel {
 public:
  NGramModel() = default;
  NGramModel(int max_n, Lexicon lexicon, bool include_nonwords = true);

  int max_n() const { return max_n_; }
  bool include_nonwords() const { return include_nonwords_; }
  const Lexicon& lexicon() const { return lexicon_; }

  // Count of `variant` after `context`; the level is context.size() + 1.
  std::uint64_t Count(std::span<const std::string> context,
                      const std::string& variant) const;
  void Add(std::span<const std::string> context, const std::string& variant,
           std::uint64_t delta = 1);

  // Adds every count of `other` (same max_n). Used to merge per-thread
  // tables.
  void Merge(const NGramModel& other);
  // Removes every count of `other`; `other` must be a sub-count of *this.
  void Subtract(const NGramModel& other);

  // count(context, variant) / sum over the wordkey's candidates. nullopt
  // when the denominator is zero. Throws ParamError for untrained levels.
  std::optional<double> Probability(std::span<const std::string> context,
                                    const std::string& variant) const;

  // Picks a variant for `wordkey` after the restored `prefix`, backing off
  // from level n whenever the maximum is not unique (including all-zero).
  // Unigram ties break lexicographically. Throws ModelError for a wordkey
  // outside the variant index.
  // With `held_out`, its counts are subtracted from every lookup; used by
  // cross-validation to drop test lines without copying the model.
  std::string Decide(std::span<const std::string> prefix,
                     const std::string& wordkey, int n,
                     const NGramModel* held_out = nullptr) const;

  // Restores tokens[0..end) left to right: ambiguous wordkeys by Decide,
  // unambiguous ones from the lexicon, anything else verbatim.
  std::vector<std::string> RestorePrefix(
      std::span<const std::string> tokens, std::size_t end, int n,
      const NGramModel* held_out = nullptr) const;

  std::string RestoreInstance(const Instance& inst, int n,
                              const NGramModel* held_out = nullptr) const;

  std::size_t EntryCount(int k) const;
  bool operator==(const NGramModel& other) const;

  nlohmann::ordered_json ToJson() const;
  static NGramModel FromJson(const nlohmann::json& j);

 private:
  static std::string Key(std::span<const std::string> context,
                         const std::string& variant);
  bool IsContextToken(const std::string& token) const;
  std::uint64_t CountMinus(std::span<const std::string> context,
                           const std::string& variant,
                           const NGramModel* held_out) const;

  int max_n_ = 1;
  bool include_nonwords_ = true;
  Lexicon lexicon_;
  std::vector<std::unordered_map<std::string, std::uint64_t>> levels_;
};

// Counts n-grams over the marked corpus (lowercased when the lexicon is).
// Parallel map-reduce over lines; equal to TrainNGramSerial.
NGramModel TrainNGram(const Corpus& corpus, int max_n, const Lexicon& lexicon,
                      bool include_nonwords = true);
NGramModel TrainNGramSerial(const Corpus& corpus, int max_n,
                            const Lexicon& lexicon,
                            bool include_nonwords = true);

// Counts only the listed lines.
NGramModel TrainNGramOnLines(const Corpus& corpus,
                             std::span<const std::size_t> lines, int max_n,
                             const Lexicon& lexicon,
                             bool include_nonwords = true);

}  // namespace diacres

#endif  // DIACRES_NGRAM_H_
