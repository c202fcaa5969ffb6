/*
   make_test_atlas.cpp

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

// Regenerates the bundled 16x16x16 test atlas: a 2-voxel background margin
// around a 12x12x12 core split into 2x2x3 blocks of 6x6x4 voxels, regions
// 1..12, with the two bottom blocks at by==1 (11, 12) flagged cerebellar.
//
//   make_test_atlas <out_dir>     writes test_atlas.nii.gz and
//                                 test_atlas_regions.csv

#include <cstdio>
#include <filesystem>
#include <string>

#include "amypet/csv.hpp"
#include "amypet/nifti.hpp"
#include "amypet/volume.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: make_test_atlas <out_dir>\n");
        return 2;
    }
    const std::filesystem::path out_dir = argv[1];
    std::filesystem::create_directories(out_dir);

    amypet::Volume3D atlas;
    atlas.dims = {16, 16, 16};
    atlas.spacing = {8.0, 8.0, 8.0};
    atlas.intent = amypet::Intent::Labels;
    atlas.affine = amypet::identity_affine();
    for (int i = 0; i < 3; ++i) {
        atlas.affine[i][i] = 8.0;
        atlas.affine[i][3] = -64.0;
    }
    atlas.data.assign(atlas.voxel_count(), 0.0);

    for (int z = 2; z < 14; ++z)
        for (int y = 2; y < 14; ++y)
            for (int x = 2; x < 14; ++x) {
                const int bx = (x - 2) / 6;       // 0..1
                const int by = (y - 2) / 6;       // 0..1
                const int bz = (z - 2) / 4;       // 0..2
                const int region = (2 - bz) * 4 + by * 2 + bx + 1;
                atlas.at(x, y, z) = static_cast<double>(region);
            }

    amypet::write_nifti(atlas, out_dir / "test_atlas.nii.gz", "amypet bundled test atlas");

    std::string csv = "region_id,name,is_cerebellar\n";
    for (int r = 1; r <= 10; ++r) {
        char row[64];
        std::snprintf(row, sizeof(row), "%d,Region_%02d,0\n", r, r);
        csv += row;
    }
    csv += "11,Cerebellum_L,1\n12,Cerebellum_R,1\n";
    amypet::write_file_atomic(out_dir / "test_atlas_regions.csv", csv);

    std::printf("wrote %s and %s\n", (out_dir / "test_atlas.nii.gz").c_str(),
                (out_dir / "test_atlas_regions.csv").c_str());
    return 0;
}
