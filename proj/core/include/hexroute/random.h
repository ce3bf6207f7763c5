// Copyright 2026 The hexroute Authors
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

#ifndef HEXROUTE_RANDOM_H
#define HEXROUTE_RANDOM_H

#include <cstdint>
#include <initializer_list>

namespace hexroute {

/// Seed of an independent random stream, derived from a base seed and a list
/// of stream coordinates with the splitmix64 finalizer.
inline uint64_t derive_seed(uint64_t seed, std::initializer_list<uint64_t> stream) {
    auto mix = [](uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    uint64_t h = mix(seed);
    for (uint64_t s : stream) {
        h = mix(h ^ mix(s));
    }
    return h;
}

}  // namespace hexroute

#endif
