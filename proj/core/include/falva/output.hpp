#pragma once

#include <filesystem>
#include <string>

namespace falva {

/// Decimal formatting used in every table: 17 significant digits, enough to
/// round-trip a double bit-exactly.
std::string format_float(double x);

/// Writes content to path via a temporary file plus rename, so readers never
/// observe a half-written table.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace falva
