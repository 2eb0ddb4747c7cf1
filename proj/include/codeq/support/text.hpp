#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace codeq::text {

bool is_identifier(std::string_view s);

/// Splits on '\n'. A trailing newline does not produce an empty last line.
std::vector<std::string> split_lines(std::string_view s);

std::vector<std::string> split(std::string_view s, char separator);
std::string join(const std::vector<std::string>& parts, std::string_view separator);
std::string_view trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);

/// Double-quoted literal with \" \\ \n \t \r and \xHH escapes for other
/// control bytes.
std::string quote(std::string_view s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace codeq::text
