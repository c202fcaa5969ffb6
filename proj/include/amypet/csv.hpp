/*
   csv.hpp

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

#ifndef AMYPET_CSV_HPP
#define AMYPET_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace amypet {

/// Minimal comma-separated table. Lines starting with '#' are comments and
/// are skipped on read (output files use one for provenance). No quoting:
/// none of the pipeline's fields may contain commas.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column, or throws with the file context.
    std::size_t column(const std::string& name, const std::string& file_context) const;
};

CsvTable read_csv(const std::filesystem::path& path);

std::vector<std::string> split_csv_line(const std::string& line);

/// Serializes a double with round-trip precision (shortest form that parses
/// back exactly), so repeated runs emit byte-identical files.
std::string format_double(double v);

/// Writes `content` atomically: temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace amypet

#endif // AMYPET_CSV_HPP
