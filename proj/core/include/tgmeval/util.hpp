// Copyright 2026 The tgm-eval Authors
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
#include <string>
#include <string_view>

namespace tgmeval::util {

/// count/total as a percentage with one decimal, round-half-up, computed in
/// integer arithmetic so output is identical across platforms. "n/a" when
/// total is zero.
inline std::string percent_string(std::uint64_t count, std::uint64_t total) {
    if (total == 0) return "n/a";
    // tenths of a percent, half-up
    std::uint64_t scaled = count * 1000;
    std::uint64_t tenths = scaled / total;
    if ((scaled % total) * 2 >= total) ++tenths;
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

/// FNV-1a 64-bit, hex-encoded; used for content-addressing cached requests.
inline std::string fnv1a_hex(std::string_view data) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

}  // namespace tgmeval::util
