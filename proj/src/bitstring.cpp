// Copyright 2026 The rydmis Authors
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

#include "rydmis/bitstring.hpp"

#include <bit>

#include "rydmis/error.hpp"

namespace rydmis {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

}  // namespace

Bitstring::Bitstring(std::size_t n) : n_(n), words_(word_count(n), 0) {}

Bitstring Bitstring::from_string(std::string_view text) {
  Bitstring b(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      b.set(i);
    } else if (text[i] != '0') {
      raise(ErrorKind::ParseError, "bitstring contains '" + std::string(1, text[i]) + "'");
    }
  }
  return b;
}

Bitstring Bitstring::from_index(std::uint64_t index, std::size_t n) {
  if (n > kWordBits) raise(ErrorKind::TooLarge, "index form supports at most 64 bits");
  Bitstring b(n);
  if (n > 0) {
    const std::uint64_t mask = n == kWordBits ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    b.words_[0] = index & mask;
  }
  return b;
}

bool Bitstring::test(std::size_t i) const {
  if (i >= n_) raise(ErrorKind::OutOfRange, "bit " + std::to_string(i) + " of " + std::to_string(n_));
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void Bitstring::set(std::size_t i, bool value) {
  if (i >= n_) raise(ErrorKind::OutOfRange, "bit " + std::to_string(i) + " of " + std::to_string(n_));
  const std::uint64_t bit = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= bit;
  } else {
    words_[i / kWordBits] &= ~bit;
  }
}

void Bitstring::flip(std::size_t i) { set(i, !test(i)); }

std::size_t Bitstring::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::size_t> Bitstring::selected() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (test(i)) out.push_back(i);
  }
  return out;
}

std::uint64_t Bitstring::to_index() const {
  if (n_ > kWordBits) raise(ErrorKind::TooLarge, "index form supports at most 64 bits");
  return n_ == 0 ? 0 : words_[0];
}

std::string Bitstring::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

bool Bitstring::is_subset_of(const Bitstring& other) const {
  if (other.n_ != n_) return false;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

std::size_t Bitstring::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ULL ^ n_;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace rydmis
