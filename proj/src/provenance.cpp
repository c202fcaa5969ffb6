/*
   provenance.cpp

   Copyright 2026 the amypet authors.

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */

#include "amypet/provenance.hpp"

#include <cstdio>

namespace amypet {

std::string hash_config(const std::map<std::string, std::string>& effective) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        h ^= 0x1e;
        h *= 0x100000001b3ULL;
    };
    for (const auto& [key, value] : effective) {
        mix(key);
        mix(value);
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Provenance make_provenance(const std::map<std::string, std::string>& effective,
                           std::uint64_t seed) {
    Provenance p;
    p.config_hash = hash_config(effective);
    p.seed = seed;
    return p;
}

} // namespace amypet
