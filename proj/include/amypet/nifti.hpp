/*
   nifti.hpp

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

#ifndef AMYPET_NIFTI_HPP
#define AMYPET_NIFTI_HPP

#include <filesystem>
#include <string>

#include "amypet/volume.hpp"

namespace amypet {

/// Reads a NIfTI-1 single-file volume (.nii, or gzip container detected by
/// magic bytes rather than extension). Applies scl_slope/scl_inter when
/// scl_slope != 0, accepts either endianness, and squeezes a singleton 4th
/// dimension. Supported payloads: uint8, int16, int32, float32, float64.
Volume3D read_nifti(const std::filesystem::path& path, Intent intent = Intent::Uptake);

/// Writes a NIfTI-1 single file; gzip-compressed when the path ends in .gz.
/// Uptake/Weights volumes are stored as float32, Labels as int16. The
/// `descrip` header field carries the optional description (truncated to 79
/// chars). Output is written to a temp file and renamed into place.
void write_nifti(const Volume3D& vol, const std::filesystem::path& path,
                 const std::string& description = "");

} // namespace amypet

#endif // AMYPET_NIFTI_HPP
