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

#include "diacres/pipeline.h"

#include <cstdint>
#include <filesystem>
#include <fstream>

#include "diacres/error.h"
#include "diacres/unicode.h"

namespace diacres {
namespace {

constexpr int kBundleVersion = 1;

}  // namespace

const char* RestorerTypeName(RestorerType type) {
  switch (type) {
    case RestorerType::kNGram:
      return "ngram";
    case RestorerType::kClassifier:
      return "classifier";
    case RestorerType::kEmbedding:
      return "embedding";
  }
  return "";
}

Fallback ParseFallback(const std::string& name) {
  if (name == "echo") return Fallback::kEcho;
  if (name == "unigram") return Fallback::kUnigram;
  throw ParamError("unknown fallback: " + name);
}

Pipeline Pipeline::FromNGram(NGramModel model, int n) {
  if (n < 1 || n > model.max_n()) throw ParamError("n outside the model's range");
  Pipeline p;
  p.loaded_ = true;
  p.type_ = RestorerType::kNGram;
  p.lexicon_ = model.lexicon();
  p.ngram_ = std::move(model);
  p.n_ = n;
  return p;
}

Pipeline Pipeline::FromClassifiers(Lexicon lexicon,
                                   std::map<std::string, WordkeyClassifier> models,
                                   ClassifierKind kind, int window_size) {
  Pipeline p;
  p.loaded_ = true;
  p.type_ = RestorerType::kClassifier;
  p.lexicon_ = std::move(lexicon);
  p.classifiers_ = std::move(models);
  p.kind_ = kind;
  p.window_size_ = window_size;
  return p;
}

Pipeline Pipeline::FromEmbedding(Lexicon lexicon, EmbeddingModel vectors,
                                 CowordTable cowords, Scheme scheme,
                                 int window_size) {
  Pipeline p;
  p.loaded_ = true;
  p.type_ = RestorerType::kEmbedding;
  p.lexicon_ = std::move(lexicon);
  p.vectors_ = std::move(vectors);
  p.cowords_ = std::move(cowords);
  p.scheme_ = scheme;
  p.window_size_ = window_size;
  return p;
}

std::string Pipeline::Key(const std::string& surface) const {
  std::string key = StripDiacritics(surface);
  return lexicon_.lowercase ? ToLower(key) : key;
}

std::string Pipeline::Ambiguous(std::span<const std::string> keys,
                                std::size_t i) const {
  const std::string& key = keys[i];
  if (type_ == RestorerType::kClassifier) {
    auto it = classifiers_.find(key);
    if (it == classifiers_.end()) return lexicon_.MajorityVariant(key);
    return it->second.Predict(keys, i);
  }
  EmbeddingRestorer restorer(&vectors_, &lexicon_, &cowords_, scheme_,
                             window_size_);
  return restorer.Restore(keys, i).variant;
}

Line Pipeline::RestoreLine(const Line& line) const {
  if (!loaded_) throw ModelError("no restorer loaded");
  std::vector<std::string> keys;
  keys.reserve(line.size());
  for (const Token& t : line) keys.push_back(Key(t.surface));

  std::vector<std::string> ngram_out;
  if (type_ == RestorerType::kNGram) {
    ngram_out = ngram_.RestorePrefix(keys, keys.size(), n_);
  }

  Line out = line;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const Token& tok = line[i];
    if (tok.kind != TokenKind::kWord) continue;
    const std::string& key = keys[i];
    std::string restored;
    if (lexicon_.Candidates(key) != nullptr) {
      if (type_ == RestorerType::kNGram) {
        restored = ngram_out[i];
      } else {
        try {
          restored = Ambiguous(keys, i);
        } catch (const ModelError&) {
          if (fallback_ == Fallback::kEcho) continue;
          restored = lexicon_.MajorityVariant(key);
        }
      }
    } else if (auto it = lexicon_.unambiguous.find(key);
               it != lexicon_.unambiguous.end()) {
      restored = it->second;
    } else {
      continue;
    }
    out[i].surface = TransferCase(tok.surface, restored);
  }
  return out;
}

Corpus Pipeline::RestoreSerial(const Corpus& corpus) const {
  Corpus out;
  out.is_marked = true;
  out.lines.reserve(corpus.lines.size());
  for (const Line& line : corpus.lines) out.lines.push_back(RestoreLine(line));
  return out;
}

Corpus Pipeline::Restore(const Corpus& corpus) const {
  if (!loaded_) throw ModelError("no restorer loaded");
  Corpus out;
  out.is_marked = true;
  out.lines.resize(corpus.lines.size());
  const auto n = static_cast<std::int64_t>(corpus.lines.size());
  std::vector<std::string> errors(corpus.lines.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto li = static_cast<std::size_t>(i);
    try {
      out.lines[li] = RestoreLine(corpus.lines[li]);
    } catch (const std::exception& e) {
      errors[li] = e.what();
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) throw ModelError(e);
  }
  return out;
}

void Pipeline::Save(const std::string& path) const {
  if (!loaded_) throw ModelError("no restorer loaded");
  nlohmann::ordered_json j;
  j["format"] = "diacres-bundle";
  j["format_version"] = kBundleVersion;
  j["restorer"] = RestorerTypeName(type_);
  j["fallback"] = fallback_ == Fallback::kEcho ? "echo" : "unigram";
  switch (type_) {
    case RestorerType::kNGram:
      j["n"] = n_;
      j["ngram"] = ngram_.ToJson();
      break;
    case RestorerType::kClassifier: {
      j["lexicon"] = LexiconToJson(lexicon_);
      j["kind"] = ClassifierKindName(kind_);
      j["window"] = window_size_;
      nlohmann::ordered_json models = nlohmann::ordered_json::object();
      for (const auto& [key, clf] : classifiers_) models[key] = clf.ToJson();
      j["classifiers"] = std::move(models);
      break;
    }
    case RestorerType::kEmbedding: {
      const std::string vec_path = path + ".vectors";
      SaveVectors(vectors_, vec_path);
      j["lexicon"] = LexiconToJson(lexicon_);
      j["scheme"] = SchemeName(scheme_);
      j["window"] = window_size_;
      j["vectors"] = std::filesystem::path(vec_path).filename().string();
      j["cowords"] = CowordsToJson(cowords_);
      break;
    }
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << j.dump() << '\n';
}

Pipeline Pipeline::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError("malformed model bundle: " + std::string(e.what()));
  }
  try {
    if (j.value("format", "") != "diacres-bundle") {
      throw ModelError("not a model bundle: " + path);
    }
    const std::string type = j.at("restorer").get<std::string>();
    Pipeline p;
    if (type == "ngram") {
      p = FromNGram(NGramModel::FromJson(j.at("ngram")), j.at("n").get<int>());
    } else if (type == "classifier") {
      std::map<std::string, WordkeyClassifier> models;
      for (const auto& [key, m] : j.at("classifiers").items()) {
        models[key] = WordkeyClassifier::FromJson(m);
      }
      p = FromClassifiers(LexiconFromJson(j.at("lexicon")), std::move(models),
                          ParseClassifierKind(j.at("kind").get<std::string>()),
                          j.at("window").get<int>());
    } else if (type == "embedding") {
      const auto dir = std::filesystem::path(path).parent_path();
      const auto vec_path = dir / j.at("vectors").get<std::string>();
      p = FromEmbedding(LexiconFromJson(j.at("lexicon")),
                        LoadVectors(vec_path.string()),
                        CowordsFromJson(j.at("cowords")),
                        ParseScheme(j.at("scheme").get<std::string>()),
                        j.at("window").get<int>());
    } else {
      throw ModelError("unknown restorer type: " + type);
    }
    p.fallback_ = ParseFallback(j.value("fallback", "echo"));
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ModelError("malformed model bundle: " + std::string(e.what()));
  } catch (const ParamError& e) {
    throw ModelError(e.what());
  } catch (const DataError& e) {
    throw ModelError(std::string("model bundle: ") + e.what());
  }
}

}  // namespace diacres
