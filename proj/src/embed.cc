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

#include "diacres/embed.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "diacres/classify.h"
#include "diacres/error.h"
#include "diacres/unicode.h"

namespace diacres {
namespace {

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string f;
  while (ss >> f) out.push_back(f);
  return out;
}

bool ParseDouble(const std::string& s, double& out) {
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && p == end;
}

void Axpy(double a, std::span<const double> x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

std::optional<std::vector<double>> ProjectEntry(
    const EmbeddingModel& source,
    const std::vector<std::pair<std::string, std::uint64_t>>& pairs) {
  std::vector<double> acc(source.dim(), 0.0);
  double total = 0.0;
  std::span<const double> only;
  std::size_t found = 0;
  for (const auto& [word, count] : pairs) {
    const auto v = source.Vector(word);
    if (v.empty()) continue;
    Axpy(static_cast<double>(count), v, acc);
    total += static_cast<double>(count);
    only = v;
    ++found;
  }
  if (total == 0.0) return std::nullopt;
  // A lone source is copied; c * v / c need not round back to v.
  if (found == 1) return std::vector<double>(only.begin(), only.end());
  for (double& x : acc) x /= total;
  return acc;
}

std::vector<std::pair<std::string, std::uint64_t>> TopN(
    const std::map<std::string, std::uint64_t>& counts, std::size_t n) {
  std::vector<std::pair<std::string, std::uint64_t>> v(counts.begin(),
                                                       counts.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  if (v.size() > n) v.resize(n);
  return v;
}

void AddSetCowords(const AmbiguousSet& set,
                   std::span<const Instance* const> instances,
                   std::size_t top_n, int window_size, CowordTable& table) {
  std::map<std::string, std::map<std::string, std::uint64_t>> counts;
  for (const VariantCount& v : set.variants) counts[v.surface];
  for (const Instance* inst : instances) {
    const StickyWindow w = ExtractWindow(inst->tokens, inst->target, window_size);
    auto& c = counts[inst->label];
    for (const std::string& word : w.context) ++c[word];
  }
  std::map<std::string, std::vector<std::pair<std::string, std::uint64_t>>> top;
  for (const auto& [variant, c] : counts) top[variant] = TopN(c, top_n);
  for (const auto& [variant, words] : top) {
    std::set<std::string> siblings;
    for (const auto& [other, ow] : top) {
      if (other == variant) continue;
      for (const auto& [w, n] : ow) siblings.insert(w);
    }
    auto& out = table.cowords[variant];
    out.clear();
    for (const auto& [w, n] : words) {
      if (!siblings.count(w)) out.emplace_back(w, n);
    }
  }
}

double PriorShare(const std::vector<VariantCount>& cands,
                  const std::string& variant) {
  std::uint64_t total = 0;
  std::uint64_t mine = 0;
  for (const VariantCount& v : cands) {
    total += v.count;
    if (v.surface == variant) mine = v.count;
  }
  return total == 0 ? 0.0 : static_cast<double>(mine) / static_cast<double>(total);
}

std::string Majority(const std::vector<VariantCount>& cands) {
  const VariantCount* best = &cands.front();
  for (const VariantCount& v : cands) {
    if (v.count > best->count ||
        (v.count == best->count && v.surface < best->surface)) {
      best = &v;
    }
  }
  return best->surface;
}

// Mean of the vectors of `words`; empty when no word resolves.
std::vector<double> MeanVector(const EmbeddingModel& model,
                               const Lexicon* lexicon,
                               const std::vector<std::string>& words) {
  std::vector<double> acc(model.dim(), 0.0);
  std::size_t n = 0;
  for (const std::string& w : words) {
    const auto v = ResolveVector(model, lexicon, w);
    if (v.empty()) continue;
    Axpy(1.0, v, acc);
    ++n;
  }
  if (n == 0) return {};
  for (double& x : acc) x /= static_cast<double>(n);
  return acc;
}

bool IsZero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

}  // namespace

std::span<const double> EmbeddingModel::Vector(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return {};
  return Row(it->second);
}

std::span<const double> EmbeddingModel::Row(std::size_t i) const {
  return std::span<const double>(data_).subspan(i * dim_, dim_);
}

void EmbeddingModel::Set(const std::string& word, std::span<const double> vec) {
  if (vec.size() != dim_) throw ParamError("vector length != model dimension");
  auto it = index_.find(word);
  if (it != index_.end()) {
    std::copy(vec.begin(), vec.end(), data_.begin() + it->second * dim_);
    return;
  }
  index_.emplace(word, words_.size());
  words_.push_back(word);
  data_.insert(data_.end(), vec.begin(), vec.end());
}

bool EmbeddingModel::operator==(const EmbeddingModel& other) const {
  return dim_ == other.dim_ && words_ == other.words_ && data_ == other.data_;
}

EmbeddingModel LoadVectors(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  const auto header = SplitFields(line);
  std::size_t vocab = 0;
  std::size_t dim = 0;
  try {
    if (header.size() != 2) throw std::invalid_argument("header");
    vocab = std::stoul(header[0]);
    dim = std::stoul(header[1]);
  } catch (const std::exception&) {
    throw ParseError(1, "header must be \"V D\"");
  }
  if (dim == 0) throw ParseError(1, "dimension must be positive");
  EmbeddingModel model(dim);
  std::vector<double> vec(dim);
  std::size_t lineno = 1;
  while (model.size() < vocab && std::getline(in, line)) {
    ++lineno;
    const auto fields = SplitFields(line);
    if (fields.size() != dim + 1) {
      throw ParseError(lineno, "expected word and " + std::to_string(dim) +
                                   " values, got " +
                                   std::to_string(fields.size()) + " fields");
    }
    for (std::size_t i = 0; i < dim; ++i) {
      if (!ParseDouble(fields[i + 1], vec[i])) {
        throw ParseError(lineno, "bad number: " + fields[i + 1]);
      }
    }
    std::string word;
    try {
      word = Normalize(fields[0]);
    } catch (const DecodeError& e) {
      throw ParseError(lineno, e.what());
    }
    model.Set(word, vec);
  }
  if (model.size() < vocab) {
    throw ParseError(lineno, "file ends after " + std::to_string(model.size()) +
                                 " of " + std::to_string(vocab) + " rows");
  }
  return model;
}

EmbeddingModel LoadVectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open vectors: " + path);
  return LoadVectors(in);
}

void SaveVectors(const EmbeddingModel& model, std::ostream& out) {
  out << model.size() << ' ' << model.dim() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < model.size(); ++i) {
    out << model.words()[i];
    for (double x : model.Row(i)) {
      auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
      out << ' ' << std::string_view(buf, static_cast<std::size_t>(p - buf));
    }
    out << '\n';
  }
}

void SaveVectors(const EmbeddingModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write vectors: " + path);
  SaveVectors(model, out);
}

double Cosine(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

AlignmentDictionary LoadAlignment(std::istream& in) {
  AlignmentDictionary dict;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      f.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (f.size() != 3) throw ParseError(lineno, "expected target<TAB>source<TAB>count");
    std::uint64_t count = 0;
    auto [p, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), count);
    if (ec != std::errc() || p != f[2].data() + f[2].size() || count == 0) {
      throw ParseError(lineno, "count must be a positive integer");
    }
    try {
      dict.entries[Normalize(f[0])].emplace_back(Normalize(f[1]), count);
    } catch (const DecodeError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return dict;
}

AlignmentDictionary LoadAlignment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open alignment dictionary: " + path);
  return LoadAlignment(in);
}

EmbeddingModel ProjectSerial(const EmbeddingModel& source,
                             const AlignmentDictionary& align) {
  EmbeddingModel out(source.dim());
  for (const auto& [target, pairs] : align.entries) {
    if (auto v = ProjectEntry(source, pairs)) out.Set(target, *v);
  }
  if (out.size() == 0) throw ModelError("projection: no usable alignment");
  return out;
}

EmbeddingModel Project(const EmbeddingModel& source,
                       const AlignmentDictionary& align) {
  std::vector<const std::string*> targets;
  std::vector<const std::vector<std::pair<std::string, std::uint64_t>>*> pairs;
  for (const auto& [t, p] : align.entries) {
    targets.push_back(&t);
    pairs.push_back(&p);
  }
  std::vector<std::optional<std::vector<double>>> rows(targets.size());
  const auto n = static_cast<std::int64_t>(targets.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    rows[k] = ProjectEntry(source, *pairs[k]);
  }
  EmbeddingModel out(source.dim());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i]) out.Set(*targets[i], *rows[i]);
  }
  if (out.size() == 0) throw ModelError("projection: no usable alignment");
  return out;
}

const std::vector<std::pair<std::string, std::uint64_t>>* CowordTable::Find(
    const std::string& variant) const {
  auto it = cowords.find(variant);
  return it == cowords.end() ? nullptr : &it->second;
}

CowordTable BuildCowords(std::span<const AmbiguousSet> sets, std::size_t top_n,
                         int window_size) {
  CowordTable table;
  for (const AmbiguousSet& set : sets) {
    std::vector<const Instance*> all;
    all.reserve(set.instances.size());
    for (const Instance& inst : set.instances) all.push_back(&inst);
    AddSetCowords(set, all, top_n, window_size, table);
  }
  return table;
}

CowordTable BuildCowords(const AmbiguousSet& set,
                         std::span<const Instance* const> instances,
                         std::size_t top_n, int window_size) {
  CowordTable table;
  AddSetCowords(set, instances, top_n, window_size, table);
  return table;
}

nlohmann::ordered_json CowordsToJson(const CowordTable& table) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [variant, words] : table.cowords) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [w, n] : words) arr.push_back({w, n});
    j[variant] = std::move(arr);
  }
  return j;
}

CowordTable CowordsFromJson(const nlohmann::json& j) {
  CowordTable t;
  try {
    for (const auto& [variant, arr] : j.items()) {
      auto& out = t.cowords[variant];
      for (const auto& e : arr) {
        out.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::uint64_t>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed coword table: ") + e.what());
  }
  return t;
}

const char* SchemeName(Scheme scheme) {
  switch (scheme) {
    case Scheme::kBasic:
      return "basic";
    case Scheme::kTweak1:
      return "tweak1";
    case Scheme::kTweak2:
      return "tweak2";
    case Scheme::kTweak3:
      return "tweak3";
  }
  return "basic";
}

Scheme ParseScheme(const std::string& name) {
  for (Scheme s : {Scheme::kBasic, Scheme::kTweak1, Scheme::kTweak2, Scheme::kTweak3}) {
    if (name == SchemeName(s)) return s;
  }
  throw ParamError("unknown enhancement scheme: " + name);
}

std::span<const double> ResolveVector(const EmbeddingModel& model,
                                      const Lexicon* lexicon,
                                      const std::string& word) {
  auto v = model.Vector(word);
  if (!v.empty() || lexicon == nullptr) return v;
  auto it = lexicon->unambiguous.find(word);
  if (it == lexicon->unambiguous.end()) return {};
  return model.Vector(it->second);
}

std::optional<std::vector<double>> EnhancedVector(
    const EmbeddingModel& model, const std::string& variant,
    const std::vector<std::pair<std::string, std::uint64_t>>& words,
    Scheme scheme, const Lexicon* lexicon, bool count_weighted) {
  const auto original = model.Vector(variant);
  if (original.empty()) return std::nullopt;
  if (scheme == Scheme::kBasic) {
    return std::vector<double>(original.begin(), original.end());
  }
  std::vector<double> mean(model.dim(), 0.0);
  double total = 0.0;
  for (const auto& [w, n] : words) {
    const auto v = ResolveVector(model, lexicon, w);
    if (v.empty()) continue;
    const double weight = count_weighted ? static_cast<double>(n) : 1.0;
    Axpy(weight, v, mean);
    total += weight;
  }
  if (total == 0.0) return std::nullopt;
  for (double& x : mean) x /= total;
  if (scheme != Scheme::kTweak3) {
    for (std::size_t i = 0; i < mean.size(); ++i) {
      mean[i] = 0.5 * original[i] + 0.5 * mean[i];
    }
  }
  return mean;
}

EnhanceResult Enhance(const EmbeddingModel& model, const CowordTable& cowords,
                      Scheme scheme, const Lexicon* lexicon,
                      bool count_weighted) {
  EnhanceResult r{model, {}};
  if (scheme == Scheme::kBasic) return r;
  for (const auto& [variant, words] : cowords.cowords) {
    if (model.Vector(variant).empty()) {
      r.warnings.push_back("variant has no vector: " + variant);
      continue;
    }
    auto vec = EnhancedVector(model, variant, words, scheme, lexicon,
                              count_weighted);
    if (!vec) {
      r.warnings.push_back("variant has no coword vectors: " + variant);
      continue;
    }
    r.model.Set(variant, *vec);
  }
  return r;
}

EmbeddingChoice EmbeddingRestorer::Restore(std::span<const std::string> tokens,
                                           std::size_t target) const {
  if (target >= tokens.size()) throw ParamError("target index out of range");
  const auto* cands = lexicon_ ? lexicon_->Candidates(tokens[target]) : nullptr;
  if (cands == nullptr || cands->empty()) {
    throw ModelError("unknown wordkey: " + tokens[target]);
  }
  return Restore(tokens, target, *cands, nullptr);
}

EmbeddingChoice EmbeddingRestorer::Restore(
    std::span<const std::string> tokens, std::size_t target,
    const std::vector<VariantCount>& candidates,
    const std::map<std::string, std::vector<double>>* variant_override) const {
  if (candidates.empty()) throw ModelError("no candidates");
  auto variant_vec = [&](const std::string& v) -> std::span<const double> {
    if (variant_override != nullptr) {
      auto it = variant_override->find(v);
      if (it != variant_override->end()) return it->second;
    }
    return model_->Vector(v);
  };
  bool any_vector = false;
  for (const VariantCount& c : candidates) {
    any_vector = any_vector || !variant_vec(c.surface).empty();
  }
  if (!any_vector) {
    throw ModelError("unrepresentable instance: no candidate vector for " +
                     tokens[target]);
  }

  const StickyWindow window = ExtractWindow(tokens, target, window_size_);
  const bool restricted = scheme_ == Scheme::kTweak2 || scheme_ == Scheme::kTweak3;

  std::vector<std::vector<double>> contexts(candidates.size());
  if (!restricted) {
    const auto shared = MeanVector(*model_, lexicon_, window.context);
    for (auto& c : contexts) c = shared;
  } else {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto* own = cowords_ ? cowords_->Find(candidates[i].surface) : nullptr;
      std::vector<std::string> kept;
      if (own != nullptr) {
        for (const std::string& w : window.context) {
          const bool in_set = std::any_of(own->begin(), own->end(),
                                          [&](const auto& p) { return p.first == w; });
          if (in_set) kept.push_back(w);
        }
      }
      contexts[i] = MeanVector(*model_, lexicon_, kept);
    }
  }

  EmbeddingChoice choice;
  const bool no_context = std::all_of(contexts.begin(), contexts.end(),
                                      [](const auto& c) { return c.empty() || IsZero(c); });
  if (no_context) {
    choice.variant = Majority(candidates);
    choice.empty_context = true;
    return choice;
  }
  const std::string* best = nullptr;
  double best_score = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::string& v = candidates[i].surface;
    const auto vec = variant_vec(v);
    double score;
    if (vec.empty() || contexts[i].empty() || IsZero(contexts[i])) {
      score = PriorShare(candidates, v);
      choice.prior_fallback = true;
    } else {
      score = Cosine(contexts[i], vec);
    }
    if (best == nullptr || score > best_score || (score == best_score && v < *best)) {
      best = &v;
      best_score = score;
    }
  }
  choice.variant = *best;
  return choice;
}

std::optional<std::string> OddWord(const EmbeddingModel& model,
                                   const std::vector<std::string>& words) {
  if (words.size() != 4) throw ParamError("odd word needs exactly 4 words");
  std::vector<std::size_t> oov;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!model.Contains(words[i])) oov.push_back(i);
  }
  if (oov.size() == 1) return words[oov[0]];
  if (!oov.empty()) return std::nullopt;
  const std::string* best = nullptr;
  double best_mean = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j != i) sum += Cosine(model.Vector(words[i]), model.Vector(words[j]));
    }
    const double mean = sum / 3.0;
    if (best == nullptr || mean < best_mean ||
        (mean == best_mean && words[i] < *best)) {
      best = &words[i];
      best_mean = mean;
    }
  }
  return *best;
}

std::size_t AnalogyRank(const EmbeddingModel& model, const AnalogyQuad& q) {
  const auto va = model.Vector(q.a);
  const auto vb = model.Vector(q.b);
  const auto vc = model.Vector(q.c);
  const auto vd = model.Vector(q.d);
  if (va.empty() || vb.empty() || vc.empty() || vd.empty()) return 0;
  std::vector<double> probe(model.dim());
  for (std::size_t i = 0; i < probe.size(); ++i) probe[i] = vb[i] - va[i] + vc[i];
  const double target = Cosine(probe, vd);
  std::size_t rank = 1;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const std::string& w = model.words()[i];
    if (w == q.a || w == q.b || w == q.c || w == q.d) continue;
    const double s = Cosine(probe, model.Row(i));
    if (s > target || (s == target && w < q.d)) ++rank;
  }
  return rank;
}

namespace {

double QuadScore(const EmbeddingModel& model, const AnalogyQuad& q,
                 std::size_t list_len) {
  const std::size_t rank = AnalogyRank(model, q);
  if (rank == 0 || rank > list_len) return 0.0;
  return 1.0 / static_cast<double>(rank);
}

bool Usable(const EmbeddingModel& model, const AnalogyQuad& q) {
  return model.Contains(q.a) && model.Contains(q.b) && model.Contains(q.c);
}

}  // namespace

AnalogyResult AnalogyMrrSerial(const EmbeddingModel& model,
                               std::span<const AnalogyQuad> quads,
                               std::size_t list_len) {
  AnalogyResult r;
  double sum = 0.0;
  for (const AnalogyQuad& q : quads) {
    if (!Usable(model, q)) {
      ++r.skipped;
      continue;
    }
    ++r.used;
    sum += QuadScore(model, q, list_len);
  }
  r.mrr = r.used ? sum / static_cast<double>(r.used) : 0.0;
  return r;
}

AnalogyResult AnalogyMrr(const EmbeddingModel& model,
                         std::span<const AnalogyQuad> quads,
                         std::size_t list_len) {
  std::vector<double> scores(quads.size(), -1.0);
  const auto n = static_cast<std::int64_t>(quads.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& q = quads[static_cast<std::size_t>(i)];
    if (Usable(model, q)) scores[static_cast<std::size_t>(i)] = QuadScore(model, q, list_len);
  }
  // Summed in input order so the result matches the serial path bit for bit.
  AnalogyResult r;
  double sum = 0.0;
  for (double s : scores) {
    if (s < 0.0) {
      ++r.skipped;
    } else {
      ++r.used;
      sum += s;
    }
  }
  r.mrr = r.used ? sum / static_cast<double>(r.used) : 0.0;
  return r;
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ParamError("pearson needs two equal-length series of >= 2 values");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw ModelError("pearson: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

WordsimResult WordsimPearson(const EmbeddingModel& model,
                             std::span<const WordPair> pairs) {
  std::vector<double> cos;
  std::vector<double> human;
  for (const WordPair& p : pairs) {
    const auto a = model.Vector(p.w1);
    const auto b = model.Vector(p.w2);
    if (a.empty() || b.empty()) continue;
    cos.push_back(Cosine(a, b));
    human.push_back(p.score);
  }
  if (cos.size() < 2) throw ModelError("wordsim: fewer than two usable pairs");
  return {Pearson(cos, human), cos.size()};
}

namespace {

template <typename F>
void ForEachRow(const std::string& path, F&& f) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = SplitFields(line);
    if (fields.empty() || fields[0][0] == '#' || fields[0][0] == ':') continue;
    for (auto& field : fields) {
      try {
        field = Normalize(field);
      } catch (const DecodeError& e) {
        throw ParseError(lineno, e.what());
      }
    }
    f(lineno, fields);
  }
}

}  // namespace

std::vector<OddWordItem> LoadOddWord(const std::string& path) {
  std::vector<OddWordItem> out;
  ForEachRow(path, [&](std::size_t lineno, const std::vector<std::string>& f) {
    if (f.size() != 5) throw ParseError(lineno, "expected w1 w2 w3 w4 odd");
    out.push_back({{f[0], f[1], f[2], f[3]}, f[4]});
  });
  return out;
}

std::vector<AnalogyQuad> LoadAnalogy(const std::string& path) {
  std::vector<AnalogyQuad> out;
  ForEachRow(path, [&](std::size_t lineno, const std::vector<std::string>& f) {
    if (f.size() != 4) throw ParseError(lineno, "expected a b c d");
    out.push_back({f[0], f[1], f[2], f[3]});
  });
  return out;
}

std::vector<WordPair> LoadWordsim(const std::string& path) {
  std::vector<WordPair> out;
  ForEachRow(path, [&](std::size_t lineno, const std::vector<std::string>& f) {
    double score = 0.0;
    if (f.size() != 3 || !ParseDouble(f[2], score)) {
      throw ParseError(lineno, "expected w1 w2 score");
    }
    out.push_back({f[0], f[1], score});
  });
  return out;
}

}  // namespace diacres
