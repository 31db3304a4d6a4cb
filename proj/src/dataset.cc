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

#include "diacres/dataset.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "diacres/error.h"
#include "diacres/unicode.h"

namespace diacres {
namespace {

struct KeyedToken {
  std::string surface;  // possibly lowercased
  std::string key;      // stripped surface
};

// Per-line (surface, wordkey) pairs for every token, computed in parallel.
std::vector<std::vector<KeyedToken>> KeyLines(const Corpus& corpus,
                                              bool lowercase) {
  std::vector<std::vector<KeyedToken>> keyed(corpus.lines.size());
  const auto n = static_cast<std::int64_t>(corpus.lines.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    const Line& line = corpus.lines[static_cast<std::size_t>(i)];
    auto& out = keyed[static_cast<std::size_t>(i)];
    out.reserve(line.size());
    for (const Token& t : line) {
      std::string s = lowercase ? ToLower(t.surface) : t.surface;
      std::string k = StripDiacritics(s);
      out.push_back({std::move(s), std::move(k)});
    }
  }
  return keyed;
}

}  // namespace

void GenParams::Validate() const {
  if (!(varnt_rep >= 0.0 && varnt_rep < 1.0)) {
    throw ParamError("varnt_rep must be in [0, 1)");
  }
  if (!(wdkey_rep > 0.0 && wdkey_rep < 1.0)) {
    throw ParamError("wdkey_rep must be in (0, 1)");
  }
  if (!(varnt_distrib > 0.0 && varnt_distrib <= 1.0)) {
    throw ParamError("varnt_distrib must be in (0, 1]");
  }
}

std::uint64_t AmbiguousSet::Total() const {
  std::uint64_t total = 0;
  for (const VariantCount& v : variants) total += v.count;
  return total;
}

std::vector<std::string> AmbiguousSet::Classes() const {
  std::vector<std::string> out;
  out.reserve(variants.size());
  for (const VariantCount& v : variants) out.push_back(v.surface);
  return out;
}

std::vector<AmbiguousSet> Generate(const Corpus& corpus,
                                   const GenParams& params) {
  params.Validate();
  const auto keyed = KeyLines(corpus, params.lowercase);

  std::uint64_t word_tokens = 0;
  std::map<std::string, std::map<std::string, std::uint64_t>> counts;
  for (std::size_t li = 0; li < corpus.lines.size(); ++li) {
    for (std::size_t ti = 0; ti < corpus.lines[li].size(); ++ti) {
      if (corpus.lines[li][ti].kind != TokenKind::kWord) continue;
      ++word_tokens;
      ++counts[keyed[li][ti].key][keyed[li][ti].surface];
    }
  }
  if (word_tokens == 0) return {};

  std::map<std::string, AmbiguousSet> kept;
  for (const auto& [key, variants] : counts) {
    if (variants.size() < 2) continue;
    std::uint64_t total = 0;
    for (const auto& [s, c] : variants) total += c;
    AmbiguousSet set;
    set.wordkey = key;
    std::uint64_t remaining = total;
    for (const auto& [s, c] : variants) {
      if (static_cast<double>(c) / static_cast<double>(total) <
          params.varnt_rep) {
        remaining -= c;
      } else {
        set.variants.push_back({s, c});
      }
    }
    if (static_cast<double>(remaining) / static_cast<double>(word_tokens) <
        params.wdkey_rep) {
      continue;
    }
    if (set.variants.size() < 2) continue;
    std::uint64_t dominant = 0;
    for (const VariantCount& v : set.variants) {
      dominant = std::max(dominant, v.count);
    }
    if (static_cast<double>(dominant) / static_cast<double>(remaining) >
        params.varnt_distrib) {
      continue;
    }
    kept.emplace(key, std::move(set));
  }

  for (std::size_t li = 0; li < corpus.lines.size(); ++li) {
    const Line& line = corpus.lines[li];
    std::vector<std::string> stripped;
    for (std::size_t ti = 0; ti < line.size(); ++ti) {
      if (line[ti].kind != TokenKind::kWord) continue;
      auto it = kept.find(keyed[li][ti].key);
      if (it == kept.end()) continue;
      const std::string& surface = keyed[li][ti].surface;
      const auto& vs = it->second.variants;
      const bool surviving =
          std::any_of(vs.begin(), vs.end(), [&](const VariantCount& v) {
            return v.surface == surface;
          });
      if (!surviving) continue;
      if (stripped.empty()) {
        stripped.reserve(line.size());
        for (const KeyedToken& k : keyed[li]) stripped.push_back(k.key);
      }
      it->second.instances.push_back(
          {stripped, ti, surface, static_cast<std::int64_t>(li)});
    }
  }

  std::vector<AmbiguousSet> out;
  out.reserve(kept.size());
  for (auto& [key, set] : kept) out.push_back(std::move(set));
  std::stable_sort(out.begin(), out.end(),
                   [](const AmbiguousSet& a, const AmbiguousSet& b) {
                     const auto ta = a.Total();
                     const auto tb = b.Total();
                     if (ta != tb) return ta > tb;
                     return a.wordkey < b.wordkey;
                   });
  return out;
}

double AppThreshold(std::uint64_t wordkey_count, std::uint64_t token_count) {
  if (token_count == 0) throw ParamError("appThreshold: token count is zero");
  return static_cast<double>(wordkey_count) /
         static_cast<double>(token_count) * 100.0;
}

double EntropyProxy(std::span<const std::uint64_t> variant_counts) {
  if (variant_counts.empty()) throw ParamError("entropy: no variant counts");
  std::uint64_t total = 0;
  std::uint64_t best = 0;
  for (std::uint64_t c : variant_counts) {
    total += c;
    best = std::max(best, c);
  }
  if (total == 0) throw ParamError("entropy: variant counts sum to zero");
  return 1.0 - static_cast<double>(best) / static_cast<double>(total);
}

void WriteDataset(const std::vector<AmbiguousSet>& sets, std::ostream& out) {
  for (const AmbiguousSet& set : sets) {
    nlohmann::ordered_json header;
    header["wordkey"] = set.wordkey;
    nlohmann::ordered_json vs = nlohmann::ordered_json::array();
    for (const VariantCount& v : set.variants) {
      vs.push_back(nlohmann::ordered_json::array({v.surface, v.count}));
    }
    header["variants"] = std::move(vs);
    out << header.dump() << '\n';
    for (const Instance& inst : set.instances) {
      nlohmann::ordered_json rec;
      rec["wordkey"] = set.wordkey;
      rec["tokens"] = inst.tokens;
      rec["target"] = inst.target;
      rec["label"] = inst.label;
      if (inst.line >= 0) rec["line"] = inst.line;
      out << rec.dump() << '\n';
    }
  }
}

void WriteDataset(const std::vector<AmbiguousSet>& sets,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write dataset: " + path);
  WriteDataset(sets, out);
}

std::vector<AmbiguousSet> ReadDataset(std::istream& in) {
  std::vector<AmbiguousSet> sets;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (raw.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
    }
    try {
      if (!rec.is_object() || !rec.contains("wordkey")) {
        throw ParseError(lineno, "record has no wordkey");
      }
      const auto wordkey = rec.at("wordkey").get<std::string>();
      if (rec.contains("variants")) {
        AmbiguousSet set;
        set.wordkey = wordkey;
        for (const auto& v : rec.at("variants")) {
          if (!v.is_array() || v.size() != 2) {
            throw ParseError(lineno, "variant must be [surface, count]");
          }
          set.variants.push_back(
              {v[0].get<std::string>(), v[1].get<std::uint64_t>()});
        }
        sets.push_back(std::move(set));
        continue;
      }
      if (sets.empty() || sets.back().wordkey != wordkey) {
        throw ParseError(lineno, "instance before its wordkey header: " +
                                     wordkey);
      }
      for (const char* field : {"tokens", "target", "label"}) {
        if (!rec.contains(field)) {
          throw ParseError(lineno, std::string("missing field: ") + field);
        }
      }
      Instance inst;
      inst.tokens = rec.at("tokens").get<std::vector<std::string>>();
      inst.target = rec.at("target").get<std::size_t>();
      inst.label = rec.at("label").get<std::string>();
      if (rec.contains("line")) inst.line = rec.at("line").get<std::int64_t>();
      if (inst.target >= inst.tokens.size()) {
        throw ParseError(lineno, "target index out of range");
      }
      if (inst.tokens[inst.target] != wordkey) {
        throw ParseError(lineno, "target token does not match the wordkey");
      }
      sets.back().instances.push_back(std::move(inst));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(lineno, std::string("bad field type: ") + e.what());
    }
  }
  return sets;
}

std::vector<AmbiguousSet> ReadDataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset: " + path);
  return ReadDataset(in);
}

const std::vector<VariantCount>* Lexicon::Candidates(
    const std::string& wordkey) const {
  auto it = variants.find(wordkey);
  return it == variants.end() ? nullptr : &it->second;
}

std::string Lexicon::MajorityVariant(const std::string& wordkey) const {
  const auto* cands = Candidates(wordkey);
  if (cands == nullptr || cands->empty()) {
    throw ModelError("unknown wordkey: " + wordkey);
  }
  const VariantCount* best = &cands->front();
  for (const VariantCount& v : *cands) {
    if (v.count > best->count ||
        (v.count == best->count && v.surface < best->surface)) {
      best = &v;
    }
  }
  return best->surface;
}

Lexicon BuildLexicon(const Corpus& corpus,
                     const std::vector<AmbiguousSet>& sets, bool lowercase) {
  Lexicon lex;
  lex.lowercase = lowercase;
  for (const AmbiguousSet& set : sets) lex.variants[set.wordkey] = set.variants;
  const auto keyed = KeyLines(corpus, lowercase);
  std::unordered_map<std::string, std::map<std::string, std::uint64_t>> counts;
  for (std::size_t li = 0; li < corpus.lines.size(); ++li) {
    for (std::size_t ti = 0; ti < corpus.lines[li].size(); ++ti) {
      if (corpus.lines[li][ti].kind != TokenKind::kWord) continue;
      if (lex.variants.count(keyed[li][ti].key)) continue;
      ++counts[keyed[li][ti].key][keyed[li][ti].surface];
    }
  }
  for (const auto& [key, surfaces] : counts) {
    // std::map iteration is lexicographic, so strict > keeps the smallest
    // surface among equally frequent ones.
    const std::string* best = nullptr;
    std::uint64_t best_count = 0;
    for (const auto& [s, c] : surfaces) {
      if (best == nullptr || c > best_count) {
        best = &s;
        best_count = c;
      }
    }
    lex.unambiguous.emplace(key, *best);
  }
  return lex;
}

nlohmann::ordered_json LexiconToJson(const Lexicon& lexicon) {
  nlohmann::ordered_json j;
  j["lowercase"] = lexicon.lowercase;
  nlohmann::ordered_json vi = nlohmann::ordered_json::object();
  for (const auto& [key, vs] : lexicon.variants) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const VariantCount& v : vs) {
      arr.push_back(nlohmann::ordered_json::array({v.surface, v.count}));
    }
    vi[key] = std::move(arr);
  }
  j["variant_index"] = std::move(vi);
  nlohmann::ordered_json um = nlohmann::ordered_json::object();
  for (const auto& [key, surface] : lexicon.unambiguous) um[key] = surface;
  j["unambiguous_map"] = std::move(um);
  return j;
}

Lexicon LexiconFromJson(const nlohmann::json& j) {
  Lexicon lex;
  try {
    lex.lowercase = j.value("lowercase", true);
    for (const auto& [key, arr] : j.at("variant_index").items()) {
      auto& vs = lex.variants[key];
      for (const auto& v : arr) {
        vs.push_back({v.at(0).get<std::string>(), v.at(1).get<std::uint64_t>()});
      }
    }
    for (const auto& [key, s] : j.at("unambiguous_map").items()) {
      lex.unambiguous.emplace(key, s.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed lexicon: ") + e.what());
  }
  for (const auto& [key, vs] : lex.variants) {
    if (lex.unambiguous.count(key)) {
      throw ModelError("wordkey in both variant index and unambiguous map: " +
                       key);
    }
  }
  return lex;
}

}  // namespace diacres
