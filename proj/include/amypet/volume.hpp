/*
   volume.hpp

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

#ifndef AMYPET_VOLUME_HPP
#define AMYPET_VOLUME_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace amypet {

enum class Intent { Uptake, Labels, Weights };

using Affine = std::array<std::array<double, 4>, 4>;

inline Affine identity_affine() {
    Affine a{};
    for (int i = 0; i < 4; ++i) a[i][i] = 1.0;
    return a;
}

/// A 3-D scalar field on a regular voxel grid. Data is stored x-fastest:
/// index = x + dims[0] * (y + dims[1] * z). The affine maps voxel indices
/// to world millimetres; its last row is always [0,0,0,1].
struct Volume3D {
    std::array<int, 3> dims{0, 0, 0};
    std::array<double, 3> spacing{1.0, 1.0, 1.0};
    Affine affine = identity_affine();
    std::vector<double> data;
    Intent intent = Intent::Uptake;

    std::size_t voxel_count() const {
        return static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) *
               static_cast<std::size_t>(dims[2]);
    }

    std::size_t index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(dims[0]) *
                   (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(z));
    }

    double at(int x, int y, int z) const { return data[index(x, y, z)]; }
    double& at(int x, int y, int z) { return data[index(x, y, z)]; }

    /// Throws InvalidVolume if any type invariant is broken (dims/spacing
    /// positive, data size matches, affine last row, integral labels).
    void validate() const;
};

} // namespace amypet

#endif // AMYPET_VOLUME_HPP
