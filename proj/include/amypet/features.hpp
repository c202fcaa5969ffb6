/*
   features.hpp

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

#ifndef AMYPET_FEATURES_HPP
#define AMYPET_FEATURES_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace amypet {

/// One scan's cerebellum-normalized regional values, ordered by region id.
struct FeatureVector {
    std::string scan_id;
    std::vector<int> region_ids;
    std::vector<double> values;
};

/// Rows = scans, columns = regions. All rows share `region_ids` ordering.
struct FeatureMatrix {
    std::vector<int> region_ids;
    std::vector<std::string> scan_ids;
    std::vector<std::vector<double>> rows;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_features() const { return region_ids.size(); }

    /// Appends a feature vector; region ids must match (LengthMismatch).
    void add(const FeatureVector& fv);

    std::optional<std::size_t> row_of(const std::string& scan_id) const;

    /// CSV with header `scan_id,region_<id>,...`; `comment` becomes a leading
    /// '#' provenance line when non-empty.
    std::string to_csv(const std::string& comment = "") const;
    static FeatureMatrix from_csv(const std::filesystem::path& path);
};

} // namespace amypet

#endif // AMYPET_FEATURES_HPP
