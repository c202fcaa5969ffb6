/*
   region_table.hpp

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

#ifndef AMYPET_REGION_TABLE_HPP
#define AMYPET_REGION_TABLE_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace amypet {

struct RegionInfo {
    int id = 0;
    std::string name;
    bool cerebellar = false;
};

/// The atlas lookup table: region ids, display names and the cerebellar
/// flag that selects the normalization reference. Kept sorted by id.
struct RegionTable {
    std::vector<RegionInfo> regions;

    /// Loads `region_id,name,is_cerebellar` (is_cerebellar: 0/1/true/false).
    static RegionTable from_csv(const std::filesystem::path& path);

    /// Unique positive ids, at least one cerebellar and one non-cerebellar
    /// entry; throws DataError otherwise.
    void validate() const;

    const RegionInfo* find(int id) const;

    std::vector<int> non_cerebellar_ids() const;
    std::vector<int> cerebellar_ids() const;
};

} // namespace amypet

#endif // AMYPET_REGION_TABLE_HPP
