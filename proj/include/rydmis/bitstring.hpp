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

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace rydmis {

// Fixed-length binary word. Position i refers to vertex i and a set bit means
// the vertex is selected (atom measured in the Rydberg state). The text form
// puts vertex 0 leftmost; the integer form used for state-vector indices puts
// vertex 0 in the least-significant bit.
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::size_t n);

  static Bitstring from_string(std::string_view text);
  static Bitstring from_index(std::uint64_t index, std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool test(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  void reset(std::size_t i) { set(i, false); }
  void flip(std::size_t i);

  std::size_t count() const noexcept;
  std::vector<std::size_t> selected() const;

  // Requires size() <= 64.
  std::uint64_t to_index() const;
  std::string to_string() const;

  bool is_subset_of(const Bitstring& other) const;

  auto operator<=>(const Bitstring&) const = default;
  bool operator==(const Bitstring&) const = default;

  std::size_t hash() const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace rydmis

template <>
struct std::hash<rydmis::Bitstring> {
  std::size_t operator()(const rydmis::Bitstring& b) const noexcept { return b.hash(); }
};
