/*
   provenance.hpp

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

#ifndef AMYPET_PROVENANCE_HPP
#define AMYPET_PROVENANCE_HPP

#include <cstdint>
#include <map>
#include <string>

namespace amypet {

inline constexpr const char* kVersion = "0.1.0";

/// What every output artifact records: tool version, a hash of the
/// effective configuration, and the seed in force.
struct Provenance {
    std::string version = kVersion;
    std::string config_hash; // 16 hex chars
    std::uint64_t seed = 0;

    /// One-line form used as a '#' comment in CSV outputs and as the
    /// NIfTI descrip field.
    std::string comment() const {
        return std::string("amypet ") + version + " config=" + config_hash +
               " seed=" + std::to_string(seed);
    }
};

/// FNV-1a over the sorted key=value rendering of the effective config.
std::string hash_config(const std::map<std::string, std::string>& effective);

Provenance make_provenance(const std::map<std::string, std::string>& effective,
                           std::uint64_t seed);

} // namespace amypet

#endif // AMYPET_PROVENANCE_HPP
