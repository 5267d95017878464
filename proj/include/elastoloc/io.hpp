#pragma once

#include <filesystem>
#include <string>

namespace elastoloc {

/// Writes through a sibling temporary file and renames it into place, so a
/// failed write never leaves a truncated file at `path`.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// 17 significant digits: round-trips every double.
std::string format_double(double v);

}  // namespace elastoloc
