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

#ifndef DIACRES_DATASET_H_
#define DIACRES_DATASET_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "diacres/corpus.h"

namespace diacres {

// Pruning gates for ambiguous-set generation.
struct GenParams {
  double varnt_rep = 0.05;      // min share of a variant within its wordkey
  double wdkey_rep = 0.0001;    // min wordkey occurrences per word token
  double varnt_distrib = 0.75;  // max share of the dominant variant
  bool lowercase = true;

  // Throws ParamError unless 0 <= varnt_rep < 1, 0 < wdkey_rep < 1 and
  // 0 < varnt_distrib <= 1.
  void Validate() const;
};

struct VariantCount {
  std::string surface;
  std::uint64_t count = 0;
  bool operator==(const VariantCount&) const = default;
};

struct Instance {
  std::vector<std::string> tokens;  // stripped (and lowercased) sentence
  std::size_t target = 0;
  std::string label;  // marked variant
  // Index of the source line in the generating corpus, -1 if unknown.
  std::int64_t line = -1;
  bool operator==(const Instance&) const = default;
};

struct AmbiguousSet {
  std::string wordkey;
  std::vector<VariantCount> variants;  // sorted by surface
  std::vector<Instance> instances;     // corpus order

  std::uint64_t Total() const;
  std::vector<std::string> Classes() const;
  bool operator==(const AmbiguousSet&) const = default;
};

// Builds ambiguous sets: group word tokens by wordkey, drop variants under
// varnt_rep (subtracting their counts), drop wordkeys under wdkey_rep, drop
// wordkeys left with fewer than two variants, drop wordkeys whose dominant
// share exceeds varnt_distrib, then emit one instance per surviving
// occurrence. Sets are ordered by descending total, ties by wordkey.
std::vector<AmbiguousSet> Generate(const Corpus& corpus,
                                   const GenParams& params = {});

// C(wordkeys) / C(tokens) * 100.
double AppThreshold(std::uint64_t wordkey_count, std::uint64_t token_count);

// 1 - max(counts) / sum(counts).
double EntropyProxy(std::span<const std::uint64_t> variant_counts);

// JSON Lines: a header record per wordkey followed by its instances.
void WriteDataset(const std::vector<AmbiguousSet>& sets, std::ostream& out);
void WriteDataset(const std::vector<AmbiguousSet>& sets,
                  const std::string& path);
std::vector<AmbiguousSet> ReadDataset(std::istream& in);
std::vector<AmbiguousSet> ReadDataset(const std::string& path);

// Restoration vocabulary shared by every restorer family. `variants` holds
// the ambiguous wordkeys (from the dataset), `unambiguous` maps every other
// word wordkey in the training corpus to its most frequent surface.
struct Lexicon {
  bool lowercase = true;
  std::map<std::string, std::vector<VariantCount>> variants;
  std::map<std::string, std::string> unambiguous;

  const std::vector<VariantCount>* Candidates(const std::string& wordkey) const;
  // Most frequent candidate; ties break lexicographically.
  std::string MajorityVariant(const std::string& wordkey) const;
};

Lexicon BuildLexicon(const Corpus& corpus,
                     const std::vector<AmbiguousSet>& sets,
                     bool lowercase = true);

nlohmann::ordered_json LexiconToJson(const Lexicon& lexicon);
Lexicon LexiconFromJson(const nlohmann::json& j);

}  // namespace diacres

#endif  // DIACRES_DATASET_H_
