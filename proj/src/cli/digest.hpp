#pragma once

#include <string>

namespace cosa::cli {

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);
std::string sha256_hex(const std::string& bytes);

}  // namespace cosa::cli
