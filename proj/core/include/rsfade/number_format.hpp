#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace rsfade {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Write `content` to a sibling temporary file, then rename it over `path`.
/// Throws ErrorKind::Io on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace rsfade
