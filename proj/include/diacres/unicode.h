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

#ifndef DIACRES_UNICODE_H_
#define DIACRES_UNICODE_H_

#include <string>
#include <string_view>
#include <vector>

namespace diacres {

// Throws DecodeError naming the byte offset of the first invalid sequence.
void ValidateUtf8(std::string_view text);

// Decodes valid UTF-8 into code points.
std::vector<char32_t> DecodeUtf8(std::string_view text);
std::string EncodeUtf8(const std::vector<char32_t>& codepoints);

// NFC composition. Idempotent.
std::string Normalize(std::string_view text);

// NFD decomposition.
std::string Decompose(std::string_view text);

// Returns the wordkey: NFD, drop every nonspacing mark (category Mn),
// recompose to NFC. Case is preserved.
std::string StripDiacritics(std::string_view word);

// True when the NFD form of `word` contains at least one Mn code point.
bool HasDiacritics(std::string_view word);

// Full Unicode lowercasing (root locale), result in NFC.
std::string ToLower(std::string_view text);

// Copies the casing pattern of `model` onto `text`: all-uppercase models
// uppercase the whole result, a capitalised model capitalises the first
// letter, anything else leaves `text` untouched.
std::string TransferCase(std::string_view model, std::string_view text);

bool IsLetter(char32_t c);
bool IsDigit(char32_t c);
bool IsPunctuation(char32_t c);
bool IsNonspacingMark(char32_t c);
bool IsSpace(char32_t c);

}  // namespace diacres

#endif  // DIACRES_UNICODE_H_
