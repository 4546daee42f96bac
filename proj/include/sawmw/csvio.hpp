#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sawmw {

// Full-precision scientific notation (17 significant digits) so that output
// determinism is checkable by hashing.
std::string format_full(double v);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Writes header + rows with format_full values. Throws on unwritable path.
void write_csv(const std::string& path, const CsvTable& table);

/// Reads a CSV written by write_csv (or any numeric CSV with one header row).
CsvTable read_csv(const std::string& path);

/// FNV-1a 64-bit over the file bytes.
std::uint64_t hash_file(const std::string& path);
std::uint64_t hash_bytes(const std::string& bytes);

}  // namespace sawmw
