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

#include "diacres/unicode.h"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "diacres/error.h"

namespace diacres {
namespace {

const icu::Normalizer2& Nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  return *n;
}

const icu::Normalizer2& Nfd() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFD normalizer unavailable");
  return *n;
}

icu::UnicodeString FromUtf8(std::string_view text) {
  ValidateUtf8(text);
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
}

std::string ToUtf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

icu::UnicodeString Apply(const icu::Normalizer2& n,
                         const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = n.normalize(s, status);
  if (U_FAILURE(status)) throw Error("ICU normalization failed");
  return out;
}

bool IsAscii(std::string_view text) {
  for (unsigned char c : text) {
    if (c >= 0x80) return false;
  }
  return true;
}

}  // namespace

void ValidateUtf8(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    if (b0 < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4, cp = b0 & 0x07, min = 0x10000;
    } else {
      throw DecodeError(i, "invalid UTF-8 lead byte");
    }
    if (i + len > n) {
      throw DecodeError(i, "truncated UTF-8 sequence");
    }
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) {
        throw DecodeError(i, "invalid UTF-8 continuation");
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw DecodeError(i, "invalid UTF-8 code point");
    }
    i += len;
  }
}

std::vector<char32_t> DecodeUtf8(std::string_view text) {
  ValidateUtf8(text);
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    std::size_t len = (b0 & 0xE0) == 0xC0 ? 2 : (b0 & 0xF0) == 0xE0 ? 3 : 4;
    char32_t cp = b0 & (len == 2 ? 0x1F : len == 3 ? 0x0F : 0x07);
    for (std::size_t k = 1; k < len; ++k) {
      cp = (cp << 6) | (static_cast<unsigned char>(text[i + k]) & 0x3F);
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string EncodeUtf8(const std::vector<char32_t>& codepoints) {
  std::string out;
  out.reserve(codepoints.size());
  for (char32_t c : codepoints) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

std::string Normalize(std::string_view text) {
  if (IsAscii(text)) return std::string(text);
  return ToUtf8(Apply(Nfc(), FromUtf8(text)));
}

std::string Decompose(std::string_view text) {
  if (IsAscii(text)) return std::string(text);
  return ToUtf8(Apply(Nfd(), FromUtf8(text)));
}

std::string StripDiacritics(std::string_view word) {
  if (IsAscii(word)) return std::string(word);
  const icu::UnicodeString nfd = Apply(Nfd(), FromUtf8(word));
  icu::UnicodeString kept;
  for (int32_t i = 0; i < nfd.length();) {
    const UChar32 c = nfd.char32At(i);
    if (u_charType(c) != U_NON_SPACING_MARK) kept.append(c);
    i += U16_LENGTH(c);
  }
  return ToUtf8(Apply(Nfc(), kept));
}

bool HasDiacritics(std::string_view word) {
  if (IsAscii(word)) return false;
  const icu::UnicodeString nfd = Apply(Nfd(), FromUtf8(word));
  for (int32_t i = 0; i < nfd.length();) {
    const UChar32 c = nfd.char32At(i);
    if (u_charType(c) == U_NON_SPACING_MARK) return true;
    i += U16_LENGTH(c);
  }
  return false;
}

std::string ToLower(std::string_view text) {
  icu::UnicodeString s = FromUtf8(text);
  s.toLower(icu::Locale::getRoot());
  return ToUtf8(Apply(Nfc(), s));
}

std::string TransferCase(std::string_view model, std::string_view text) {
  const icu::UnicodeString m = FromUtf8(model);
  bool any_letter = false;
  bool all_upper = true;
  bool first_upper = false;
  bool seen_first = false;
  for (int32_t i = 0; i < m.length();) {
    const UChar32 c = m.char32At(i);
    i += U16_LENGTH(c);
    if (!u_isalpha(c)) continue;
    any_letter = true;
    if (!seen_first) {
      first_upper = u_isupper(c) || u_istitle(c);
      seen_first = true;
    }
    if (!u_isupper(c)) all_upper = false;
  }
  if (!any_letter || !first_upper) return std::string(text);
  icu::UnicodeString t = FromUtf8(text);
  // A single upper letter is treated as capitalisation, not all-caps.
  if (all_upper && m.countChar32() > 1) {
    t.toUpper(icu::Locale::getRoot());
    return ToUtf8(Apply(Nfc(), t));
  }
  icu::UnicodeString out;
  bool done = false;
  for (int32_t i = 0; i < t.length();) {
    const UChar32 c = t.char32At(i);
    i += U16_LENGTH(c);
    if (!done && u_isalpha(c)) {
      out.append(u_totitle(c));
      done = true;
    } else {
      out.append(c);
    }
  }
  return ToUtf8(Apply(Nfc(), out));
}

bool IsLetter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)); }

bool IsDigit(char32_t c) {
  const int8_t t = u_charType(static_cast<UChar32>(c));
  return t == U_DECIMAL_DIGIT_NUMBER || t == U_OTHER_NUMBER ||
         t == U_LETTER_NUMBER;
}

bool IsPunctuation(char32_t c) { return u_ispunct(static_cast<UChar32>(c)); }

bool IsNonspacingMark(char32_t c) {
  return u_charType(static_cast<UChar32>(c)) == U_NON_SPACING_MARK;
}

bool IsSpace(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

}  // namespace diacres
