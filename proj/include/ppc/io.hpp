#pragma once

#include <string>

namespace ppc {

// Writes content to path via a temp file in the same directory plus rename, so
// readers never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// FNV-1a 64-bit content digest, rendered as 16 hex digits.
std::string content_digest(const std::string& bytes);
std::string file_digest(const std::string& path);

}  // namespace ppc
