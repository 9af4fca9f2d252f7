// Copyright 2026 The Summetrics Authors.
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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace summetrics {

inline constexpr std::string_view kToolkitVersion = "0.1.0";

// Malformed or inconsistent input data (files, records, argument shapes).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Out-of-range or unusable metric/algorithm parameters.
class ParameterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest representation that round-trips through a double.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace summetrics
