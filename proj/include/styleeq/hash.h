#pragma once

#include <string>
#include <string_view>

namespace styleeq {

// Lowercase hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

std::string sha256_file(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace styleeq
