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

#include "diacres/corpus.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "diacres/error.h"
#include "diacres/unicode.h"

namespace diacres {

const char* TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord:
      return "Word";
    case TokenKind::kPunctuation:
      return "Punctuation";
    case TokenKind::kDigit:
      return "Digit";
    case TokenKind::kSymbol:
      return "Symbol";
  }
  return "Symbol";
}

TokenKind ClassifyToken(std::string_view surface) {
  const std::vector<char32_t> cps = DecodeUtf8(surface);
  if (cps.empty()) return TokenKind::kSymbol;
  bool has_digit = false;
  bool all_punct = true;
  for (char32_t c : cps) {
    if (IsLetter(c)) return TokenKind::kWord;
    if (IsDigit(c)) has_digit = true;
    if (!IsPunctuation(c)) all_punct = false;
  }
  if (has_digit) return TokenKind::kDigit;
  if (all_punct) return TokenKind::kPunctuation;
  return TokenKind::kSymbol;
}

std::string Token::Wordkey(bool lowercase) const {
  std::string key = StripDiacritics(surface);
  return lowercase ? ToLower(key) : key;
}

std::size_t Corpus::TokenCount() const {
  std::size_t n = 0;
  for (const Line& line : lines) n += line.size();
  return n;
}

std::size_t Corpus::WordCount() const {
  std::size_t n = 0;
  for (const Line& line : lines) {
    for (const Token& t : line) n += t.kind == TokenKind::kWord;
  }
  return n;
}

namespace {

bool IsCliticMark(char32_t c) {
  return c == U'-' || c == U'\'' || c == U'\u2019' || c == U'\u02BC';
}

// Length of a detachable clitic prefix such as "na-" or "n'": one or two
// letters and a hyphen or apostrophe, followed by more letters. 0 if none.
std::size_t CliticPrefix(const std::vector<char32_t>& cps, std::size_t begin,
                         std::size_t end) {
  for (std::size_t len = 1; len <= 2 && begin + len < end; ++len) {
    if (!IsLetter(cps[begin + len - 1])) return 0;
    if (!IsCliticMark(cps[begin + len])) continue;
    for (std::size_t i = begin + len + 1; i < end; ++i) {
      if (IsLetter(cps[i])) return len + 1;
    }
    return 0;
  }
  return 0;
}

}  // namespace

Line Tokenize(std::string_view line) {
  Line out;
  const std::vector<char32_t> cps = DecodeUtf8(line);
  auto emit = [&](std::size_t begin, std::size_t end, bool attached) {
    Token t;
    t.surface = EncodeUtf8(std::vector<char32_t>(cps.begin() + begin, cps.begin() + end));
    t.kind = ClassifyToken(t.surface);
    t.attached = attached;
    out.push_back(std::move(t));
  };
  std::size_t i = 0;
  while (i < cps.size()) {
    if (IsSpace(cps[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < cps.size() && !IsSpace(cps[end])) ++end;
    bool attached = false;
    for (std::size_t p = CliticPrefix(cps, i, end); p != 0;
         p = CliticPrefix(cps, i, end)) {
      emit(i, i + p, attached);
      attached = true;
      i += p;
    }
    emit(i, end, attached);
    i = end;
  }
  return out;
}

Corpus ReadCorpus(std::istream& in) {
  Corpus corpus;
  std::string raw;
  std::size_t lineno = 0;
  std::size_t offset = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    try {
      corpus.lines.push_back(Tokenize(Normalize(raw)));
    } catch (const DecodeError& e) {
      throw DecodeError(offset + e.offset(),
                        "line " + std::to_string(lineno) + ": " + e.reason());
    }
    offset += raw.size() + 1;
  }
  return corpus;
}

Corpus ParseCorpus(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ReadCorpus(in);
}

Corpus ReadCorpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path);
  return ReadCorpus(in);
}

Corpus ReadCorpora(const std::vector<std::string>& paths) {
  Corpus all;
  for (const std::string& p : paths) {
    Corpus c = ReadCorpus(p);
    for (Line& l : c.lines) all.lines.push_back(std::move(l));
  }
  return all;
}

Corpus StripCorpus(const Corpus& corpus) {
  Corpus out;
  out.is_marked = false;
  out.lines.reserve(corpus.lines.size());
  for (const Line& line : corpus.lines) {
    Line stripped;
    stripped.reserve(line.size());
    for (const Token& t : line) {
      stripped.push_back(Token{StripDiacritics(t.surface), t.kind, t.attached});
    }
    out.lines.push_back(std::move(stripped));
  }
  return out;
}

Corpus LowercaseCorpus(const Corpus& corpus) {
  Corpus out;
  out.is_marked = corpus.is_marked;
  out.lines.reserve(corpus.lines.size());
  for (const Line& line : corpus.lines) {
    Line lowered;
    lowered.reserve(line.size());
    for (const Token& t : line) lowered.push_back(Token{ToLower(t.surface), t.kind, t.attached});
    out.lines.push_back(std::move(lowered));
  }
  return out;
}

std::string JoinLine(const Line& line) {
  std::string out;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (i && !line[i].attached) out.push_back(' ');
    out += line[i].surface;
  }
  return out;
}

void WriteCorpus(const Corpus& corpus, std::ostream& out) {
  for (const Line& line : corpus.lines) out << JoinLine(line) << '\n';
}

CorpusStats ComputeStats(const Corpus& corpus, bool lowercase) {
  CorpusStats s;
  s.lines = corpus.lines.size();
  std::unordered_map<std::string, std::uint64_t> surface_counts;
  std::unordered_map<std::string, bool> surface_has_diac;
  for (const Line& line : corpus.lines) {
    s.all_tokens += line.size();
    for (const Token& t : line) {
      if (t.kind != TokenKind::kWord) continue;
      ++s.words_only;
      ++surface_counts[lowercase ? ToLower(t.surface) : t.surface];
    }
  }
  s.vocab_size = surface_counts.size();

  std::unordered_map<std::string, std::vector<std::string>> by_key;
  for (const auto& [surface, count] : surface_counts) {
    by_key[StripDiacritics(surface)].push_back(surface);
  }
  s.all_wordkeys = by_key.size();
  for (const auto& [key, surfaces] : by_key) {
    const bool ambiguous = surfaces.size() >= 2;
    if (ambiguous) {
      ++s.ambiguous_wordkeys;
      ++s.variants_histogram[surfaces.size()];
    } else {
      ++s.unique_wordkeys;
    }
    for (const std::string& surface : surfaces) {
      if (surface == key) continue;  // no diacritics
      ++s.diac_vocab_size;
      const std::uint64_t count = surface_counts.at(surface);
      s.all_diac_words += count;
      (ambiguous ? s.amb_diac_words : s.unique_diac_words) += count;
    }
  }
  return s;
}

nlohmann::ordered_json StatsToJson(const CorpusStats& stats) {
  nlohmann::ordered_json j;
  j["lines"] = stats.lines;
  j["all_tokens"] = stats.all_tokens;
  j["words_only"] = stats.words_only;
  j["vocab_size"] = stats.vocab_size;
  j["all_diac_words"] = stats.all_diac_words;
  j["unique_diac_words"] = stats.unique_diac_words;
  j["amb_diac_words"] = stats.amb_diac_words;
  j["diac_vocab_size"] = stats.diac_vocab_size;
  j["all_wordkeys"] = stats.all_wordkeys;
  j["unique_wordkeys"] = stats.unique_wordkeys;
  j["ambiguous_wordkeys"] = stats.ambiguous_wordkeys;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [variants, keys] : stats.variants_histogram) {
    hist[std::to_string(variants)] = keys;
  }
  j["variants_histogram"] = hist;
  return j;
}

}  // namespace diacres
