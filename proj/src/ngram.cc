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

#include "diacres/ngram.h"

#include <omp.h>

#include <algorithm>
#include <map>
#include <unordered_set>

#include "diacres/error.h"
#include "diacres/unicode.h"

namespace diacres {
namespace {

constexpr char kCtxSep = '\x1f';
constexpr char kVariantSep = '\x1e';
constexpr int kFormatVersion = 1;

std::unordered_set<std::string> IndexedVariants(const Lexicon& lexicon) {
  std::unordered_set<std::string> out;
  for (const auto& [key, vs] : lexicon.variants) {
    for (const VariantCount& v : vs) out.insert(v.surface);
  }
  return out;
}

// Context stream of one line: lowercased if required, optionally without
// non-word tokens.
std::vector<std::string> PrepareLine(const Line& line, const Lexicon& lexicon,
                                     bool include_nonwords) {
  std::vector<std::string> out;
  out.reserve(line.size());
  for (const Token& t : line) {
    if (!include_nonwords && t.kind != TokenKind::kWord) continue;
    out.push_back(lexicon.lowercase ? ToLower(t.surface) : t.surface);
  }
  return out;
}

void CountLine(const std::vector<std::string>& tokens,
               const std::unordered_set<std::string>& indexed,
               NGramModel& model) {
  const auto max_n = static_cast<std::size_t>(model.max_n());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!indexed.count(tokens[i])) continue;
    const std::size_t levels = std::min(max_n, i + 1);
    for (std::size_t k = 1; k <= levels; ++k) {
      model.Add(std::span<const std::string>(tokens).subspan(i - (k - 1), k - 1),
                tokens[i]);
    }
  }
}

}  // namespace

NGramModel::NGramModel(int max_n, Lexicon lexicon, bool include_nonwords)
    : max_n_(max_n),
      include_nonwords_(include_nonwords),
      lexicon_(std::move(lexicon)) {
  if (max_n < 1) throw ParamError("max_n must be >= 1");
  levels_.resize(static_cast<std::size_t>(max_n));
}

std::string NGramModel::Key(std::span<const std::string> context,
                            const std::string& variant) {
  std::string key;
  for (std::size_t i = 0; i < context.size(); ++i) {
    if (i) key.push_back(kCtxSep);
    key += context[i];
  }
  key.push_back(kVariantSep);
  key += variant;
  return key;
}

std::uint64_t NGramModel::Count(std::span<const std::string> context,
                                const std::string& variant) const {
  const std::size_t k = context.size() + 1;
  if (k > levels_.size()) return 0;
  const auto& level = levels_[k - 1];
  auto it = level.find(Key(context, variant));
  return it == level.end() ? 0 : it->second;
}

void NGramModel::Add(std::span<const std::string> context,
                     const std::string& variant, std::uint64_t delta) {
  const std::size_t k = context.size() + 1;
  if (k > levels_.size()) throw ParamError("context longer than max_n - 1");
  levels_[k - 1][Key(context, variant)] += delta;
}

void NGramModel::Merge(const NGramModel& other) {
  if (other.max_n_ != max_n_) throw ParamError("merge: max_n mismatch");
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    for (const auto& [key, c] : other.levels_[k]) levels_[k][key] += c;
  }
}

void NGramModel::Subtract(const NGramModel& other) {
  if (other.max_n_ != max_n_) throw ParamError("subtract: max_n mismatch");
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    for (const auto& [key, c] : other.levels_[k]) {
      auto it = levels_[k].find(key);
      if (it == levels_[k].end() || it->second < c) {
        throw ModelError("subtract: counts are not a subset");
      }
      it->second -= c;
      if (it->second == 0) levels_[k].erase(it);
    }
  }
}

std::optional<double> NGramModel::Probability(
    std::span<const std::string> context, const std::string& variant) const {
  const std::size_t k = context.size() + 1;
  if (k > levels_.size()) {
    throw ParamError("no trained level for context length " +
                     std::to_string(context.size()));
  }
  std::uint64_t denom = 0;
  const auto* cands = lexicon_.Candidates(StripDiacritics(variant));
  if (cands != nullptr) {
    for (const VariantCount& v : *cands) denom += Count(context, v.surface);
  } else {
    denom = Count(context, variant);
  }
  if (denom == 0) return std::nullopt;
  return static_cast<double>(Count(context, variant)) /
         static_cast<double>(denom);
}

std::uint64_t NGramModel::CountMinus(std::span<const std::string> context,
                                     const std::string& variant,
                                     const NGramModel* held_out) const {
  const std::uint64_t c = Count(context, variant);
  if (held_out == nullptr) return c;
  const std::uint64_t h = held_out->Count(context, variant);
  return c > h ? c - h : 0;
}

std::string NGramModel::Decide(std::span<const std::string> prefix,
                               const std::string& wordkey, int n,
                               const NGramModel* held_out) const {
  if (n < 1 || n > max_n_) {
    throw ParamError("n must be in [1, " + std::to_string(max_n_) + "]");
  }
  const auto* cands = lexicon_.Candidates(wordkey);
  if (cands == nullptr || cands->empty()) {
    throw ModelError("unknown wordkey: " + wordkey);
  }
  const auto top = std::min<std::size_t>(static_cast<std::size_t>(n),
                                         prefix.size() + 1);
  for (std::size_t k = top; k >= 2; --k) {
    const auto ctx = prefix.subspan(prefix.size() - (k - 1));
    std::uint64_t best = 0;
    const std::string* best_v = nullptr;
    bool unique = false;
    for (const VariantCount& v : *cands) {
      const std::uint64_t c = CountMinus(ctx, v.surface, held_out);
      if (c > best) {
        best = c;
        best_v = &v.surface;
        unique = true;
      } else if (c == best) {
        unique = false;
      }
    }
    if (best > 0 && unique) return *best_v;
  }
  const std::string* best_v = nullptr;
  std::uint64_t best = 0;
  for (const VariantCount& v : *cands) {
    const std::uint64_t c = CountMinus({}, v.surface, held_out);
    if (best_v == nullptr || c > best || (c == best && v.surface < *best_v)) {
      best = c;
      best_v = &v.surface;
    }
  }
  return *best_v;
}

bool NGramModel::IsContextToken(const std::string& token) const {
  return include_nonwords_ || ClassifyToken(token) == TokenKind::kWord;
}

std::vector<std::string> NGramModel::RestorePrefix(
    std::span<const std::string> tokens, std::size_t end, int n,
    const NGramModel* held_out) const {
  std::vector<std::string> context;
  std::vector<std::string> restored;
  restored.reserve(end);
  for (std::size_t i = 0; i < end && i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    std::string out;
    if (lexicon_.Candidates(tok) != nullptr) {
      out = Decide(context, tok, n, held_out);
    } else if (auto it = lexicon_.unambiguous.find(tok);
               it != lexicon_.unambiguous.end()) {
      out = it->second;
    } else {
      out = tok;
    }
    if (IsContextToken(tok)) context.push_back(out);
    restored.push_back(std::move(out));
  }
  return restored;
}

std::string NGramModel::RestoreInstance(const Instance& inst, int n,
                                        const NGramModel* held_out) const {
  if (inst.target >= inst.tokens.size()) {
    throw ParamError("instance target out of range");
  }
  const auto prefix = RestorePrefix(inst.tokens, inst.target, n, held_out);
  std::vector<std::string> context;
  context.reserve(prefix.size());
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (IsContextToken(inst.tokens[i])) context.push_back(prefix[i]);
  }
  return Decide(context, inst.tokens[inst.target], n, held_out);
}

std::size_t NGramModel::EntryCount(int k) const {
  if (k < 1 || k > max_n_) return 0;
  return levels_[static_cast<std::size_t>(k - 1)].size();
}

bool NGramModel::operator==(const NGramModel& other) const {
  return max_n_ == other.max_n_ &&
         include_nonwords_ == other.include_nonwords_ &&
         levels_ == other.levels_;
}

nlohmann::ordered_json NGramModel::ToJson() const {
  nlohmann::ordered_json j;
  j["format_version"] = kFormatVersion;
  j["max_n"] = max_n_;
  j["include_nonwords"] = include_nonwords_;
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    std::map<std::string, std::uint64_t> sorted(levels_[k].begin(),
                                                levels_[k].end());
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& [key, count] : sorted) {
      const auto vpos = key.rfind(kVariantSep);
      const std::string ctx_str = key.substr(0, vpos);
      std::vector<std::string> ctx;
      if (k > 0) {
        std::size_t start = 0;
        for (;;) {
          const auto p = ctx_str.find(kCtxSep, start);
          ctx.push_back(ctx_str.substr(start, p - start));
          if (p == std::string::npos) break;
          start = p + 1;
        }
      }
      entries.push_back(
          nlohmann::ordered_json::array({ctx, key.substr(vpos + 1), count}));
    }
    nlohmann::ordered_json level;
    level["k"] = k + 1;
    level["entries"] = std::move(entries);
    levels.push_back(std::move(level));
  }
  j["levels"] = std::move(levels);
  const auto lex = LexiconToJson(lexicon_);
  j["lowercase"] = lex["lowercase"];
  j["variant_index"] = lex["variant_index"];
  j["unambiguous_map"] = lex["unambiguous_map"];
  return j;
}

NGramModel NGramModel::FromJson(const nlohmann::json& j) {
  try {
    NGramModel model(j.at("max_n").get<int>(), LexiconFromJson(j),
                     j.value("include_nonwords", true));
    for (const auto& level : j.at("levels")) {
      const int k = level.at("k").get<int>();
      if (k < 1 || k > model.max_n_) throw ModelError("bad level k");
      for (const auto& e : level.at("entries")) {
        const auto ctx = e.at(0).get<std::vector<std::string>>();
        if (static_cast<int>(ctx.size()) != k - 1) {
          throw ModelError("context length does not match level k");
        }
        model.Add(ctx, e.at(1).get<std::string>(), e.at(2).get<std::uint64_t>());
      }
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed n-gram model: ") + e.what());
  }
}

NGramModel TrainNGramSerial(const Corpus& corpus, int max_n,
                            const Lexicon& lexicon, bool include_nonwords) {
  NGramModel model(max_n, lexicon, include_nonwords);
  const auto indexed = IndexedVariants(lexicon);
  for (const Line& line : corpus.lines) {
    CountLine(PrepareLine(line, lexicon, include_nonwords), indexed, model);
  }
  return model;
}

NGramModel TrainNGram(const Corpus& corpus, int max_n, const Lexicon& lexicon,
                      bool include_nonwords) {
  NGramModel model(max_n, lexicon, include_nonwords);
  const auto indexed = IndexedVariants(lexicon);
  const auto n = static_cast<std::int64_t>(corpus.lines.size());
  const int threads = omp_get_max_threads();
  std::vector<NGramModel> partial(static_cast<std::size_t>(threads),
                                  NGramModel(max_n, Lexicon{}, include_nonwords));
#pragma omp parallel num_threads(threads)
  {
    NGramModel& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t i = 0; i < n; ++i) {
      CountLine(PrepareLine(corpus.lines[static_cast<std::size_t>(i)], lexicon,
                            include_nonwords),
                indexed, local);
    }
  }
  for (const NGramModel& p : partial) model.Merge(p);
  return model;
}

NGramModel TrainNGramOnLines(const Corpus& corpus,
                             std::span<const std::size_t> lines, int max_n,
                             const Lexicon& lexicon, bool include_nonwords) {
  NGramModel model(max_n, lexicon, include_nonwords);
  const auto indexed = IndexedVariants(lexicon);
  for (std::size_t li : lines) {
    if (li >= corpus.lines.size()) throw ParamError("line index out of range");
    CountLine(PrepareLine(corpus.lines[li], lexicon, include_nonwords), indexed,
              model);
  }
  return model;
}

}  // namespace diacres
