// Copyright 2026 The tripletkit Authors.
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

#ifndef TRIPLETKIT_TEXT_H_
#define TRIPLETKIT_TEXT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tripletkit {

// Maps Unicode scalar-value offsets to byte offsets of a UTF-8 string.
// Invalid bytes count as one scalar value each, so every byte string has
// a well-defined index.
class Utf8Index {
 public:
  explicit Utf8Index(std::string_view text);

  // Number of scalar values.
  size_t size() const { return starts_.size() - 1; }

  // Byte offset of scalar value |cp|; |cp| may equal size().
  size_t byte_offset(size_t cp) const { return starts_[cp]; }

  // Scalar index of the value starting at byte |b|. |b| must be a boundary.
  size_t char_offset(size_t byte) const;

  std::string_view slice(std::string_view text, size_t begin,
                         size_t end) const {
    return text.substr(starts_[begin], starts_[end] - starts_[begin]);
  }

 private:
  std::vector<size_t> starts_;
};

// Length in bytes of the UTF-8 sequence starting at |s[i]| (1 for invalid).
size_t Utf8SequenceLength(std::string_view s, size_t i);

// Number of scalar values in |s|.
size_t Utf8Length(std::string_view s);

void AppendUtf8(char32_t cp, std::string* out);

// Trims ASCII whitespace at both ends.
std::string_view Trim(std::string_view s);

// Trim + collapse internal whitespace runs to one space.
std::string NormalizeSpace(std::string_view s);

std::vector<std::string> Split(std::string_view s, char sep);

// Stable 64-bit hashing for seeded, platform-independent decisions.
uint64_t Fnv1a64(std::string_view s);
uint64_t Mix64(uint64_t x);
uint64_t SeededHash(uint64_t seed, std::string_view key);

// Uniform double in [0,1) from the top 53 bits of |x|.
inline double ToUnit(uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// SplitMix64 generator. Used instead of <random> distributions, whose
// output is not specified across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return Mix64(state_);
  }

  double Uniform() { return ToUnit(Next()); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Below(uint64_t n);

  template <typename T>
  void Shuffle(std::vector<T>* v) {
    for (size_t i = v->size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Below(i));
      std::swap((*v)[i - 1], (*v)[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace tripletkit

#endif  // TRIPLETKIT_TEXT_H_
