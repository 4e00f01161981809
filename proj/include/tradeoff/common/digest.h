// Copyright 2026 The Tradeoff Bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRADEOFF_COMMON_DIGEST_H_
#define TRADEOFF_COMMON_DIGEST_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace tradeoff {

// 64-bit FNV-1a. Used for provenance digests and seed derivation, not for
// anything security related.
uint64_t Fnv1a64(std::string_view data, uint64_t basis = 0xcbf29ce484222325ULL);

// Sixteen lowercase hex digits.
std::string HexDigest(uint64_t digest);

}  // namespace tradeoff

#endif  // TRADEOFF_COMMON_DIGEST_H_
