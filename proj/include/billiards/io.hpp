#pragma once

#include <string>

namespace billiards {

/// Writes to a sibling temporary file and renames it over path. Throws Io
/// with the path in the message on failure.
void write_file_atomic(const std::string& path, const std::string& content);

/// Throws Io when the file cannot be read.
std::string read_file(const std::string& path);

}  // namespace billiards
