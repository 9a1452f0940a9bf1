#pragma once

#include <string>

namespace accord {

/// Whole-file read; throws RuntimeFailure when the file cannot be opened.
std::string read_text_file(const std::string& path);

/// Writes via a sibling temporary and rename so readers never observe a partial file.
void write_text_file(const std::string& path, const std::string& contents);

/// Fixed-point rendering used wherever a format pins decimal places.
double round_to(double value, int decimals);

}  // namespace accord
