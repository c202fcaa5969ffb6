/*
   parcellation.hpp

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

#ifndef AMYPET_PARCELLATION_HPP
#define AMYPET_PARCELLATION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "amypet/features.hpp"
#include "amypet/region_table.hpp"
#include "amypet/volume.hpp"

namespace amypet {

/// An atlas label volume bound to its region table. Immutable after
/// construction and safe to share across concurrently processed scans.
class AtlasParcellation {
public:
    /// Validates that every nonzero label in the volume appears in the table
    /// (UnknownLabel) and that every table region has voxels (EmptyRegion).
    AtlasParcellation(Volume3D label_volume, RegionTable table);

    const Volume3D& label_volume() const { return labels_; }
    const RegionTable& regions() const { return table_; }

    std::int64_t region_voxel_count(int region_id) const;

    /// Table index for a region id, or -1 when absent.
    int region_index(int region_id) const;

private:
    Volume3D labels_;
    RegionTable table_;
    std::vector<std::int64_t> voxel_counts_; // aligned with table_.regions
    std::unordered_map<int, int> id_to_index_;
};

struct RegionMeans {
    std::map<int, double> means;       // region_id -> mean uptake
    std::int64_t excluded_voxels = 0;  // NaN or negative uptake, dropped
};

/// Arithmetic mean of scan voxels per region; background (label 0) excluded,
/// NaN/negative uptake dropped with a counter. A region left empty after
/// exclusion raises EmptyRegion; grid mismatch raises DimensionMismatch.
RegionMeans region_means(const Volume3D& scan, const AtlasParcellation& atlas);

/// The regional feature vector: each non-cerebellar region mean divided by
/// the voxel-weighted pooled mean over all cerebellar voxels. Raises
/// ZeroReference when the pooled cerebellar mean is not positive.
FeatureVector extract_features(const Volume3D& scan, const AtlasParcellation& atlas,
                               const std::string& scan_id = "");

} // namespace amypet

#endif // AMYPET_PARCELLATION_HPP
