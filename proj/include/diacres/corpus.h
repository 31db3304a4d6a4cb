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

#ifndef DIACRES_CORPUS_H_
#define DIACRES_CORPUS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace diacres {

enum class TokenKind { kWord, kPunctuation, kDigit, kSymbol };

const char* TokenKindName(TokenKind kind);

// Word iff the token has a letter; otherwise Digit if it has any number
// code point, Punctuation if every code point is punctuation, else Symbol.
TokenKind ClassifyToken(std::string_view surface);

struct Token {
  std::string surface;  // NFC
  TokenKind kind = TokenKind::kSymbol;
  // Split from the previous token without whitespace (a detached clitic's
  // host); JoinLine writes no space before it.
  bool attached = false;

  // Diacritic-stripped surface, optionally lowercased.
  std::string Wordkey(bool lowercase = false) const;

  bool operator==(const Token&) const = default;
};

using Line = std::vector<Token>;

struct Corpus {
  std::vector<Line> lines;
  bool is_marked = true;

  std::size_t TokenCount() const;
  std::size_t WordCount() const;

  bool operator==(const Corpus&) const = default;
};

// Splits an NFC line on whitespace, then detaches clitic prefixes of one
// or two letters ending in a hyphen or apostrophe ("na-agba" -> "na-",
// "agba"; "n'elu" -> "n'", "elu"). Never merges or drops characters.
// JoinLine(Tokenize(s)) equals s with whitespace runs collapsed.
Line Tokenize(std::string_view line);

// Normalizes each line to NFC, then tokenizes it.
Corpus ParseCorpus(std::string_view text);
Corpus ReadCorpus(const std::string& path);
Corpus ReadCorpus(std::istream& in);
Corpus ReadCorpora(const std::vector<std::string>& paths);

// Same line/token shape with every token replaced by its wordkey.
Corpus StripCorpus(const Corpus& corpus);
Corpus LowercaseCorpus(const Corpus& corpus);

// Single-space joined tokens, one line per corpus line.
std::string JoinLine(const Line& line);
void WriteCorpus(const Corpus& corpus, std::ostream& out);

struct CorpusStats {
  std::uint64_t lines = 0;
  std::uint64_t all_tokens = 0;
  std::uint64_t words_only = 0;
  std::uint64_t vocab_size = 0;
  std::uint64_t all_diac_words = 0;
  std::uint64_t unique_diac_words = 0;
  std::uint64_t amb_diac_words = 0;
  std::uint64_t diac_vocab_size = 0;
  std::uint64_t all_wordkeys = 0;
  std::uint64_t unique_wordkeys = 0;
  std::uint64_t ambiguous_wordkeys = 0;
  // variant count -> number of wordkeys with that many surfaces (>= 2).
  std::map<std::uint64_t, std::uint64_t> variants_histogram;

  bool operator==(const CorpusStats&) const = default;
};

// Word statistics over a (usually marked) corpus. A wordkey is ambiguous
// iff it maps to two or more distinct surfaces. Case is preserved unless
// `lowercase` is set.
CorpusStats ComputeStats(const Corpus& corpus, bool lowercase = false);

nlohmann::ordered_json StatsToJson(const CorpusStats& stats);

}  // namespace diacres

#endif  // DIACRES_CORPUS_H_
