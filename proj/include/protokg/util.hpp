#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace protokg::util {

// FNV-1a over the exact byte sequence.
std::uint64_t fnv1a64(std::string_view bytes);

// fnv1a64 rendered as 16 lowercase hex digits.
std::string hash_hex(std::string_view bytes);

std::string trim(std::string_view s);
std::string lower_ascii(std::string_view s);

// Collapse runs of whitespace to single spaces and trim the ends.
std::string collapse_whitespace(std::string_view s);

bool starts_with_ci(std::string_view text, std::string_view prefix);

std::vector<std::string> split(std::string_view s, char sep);

// Full-string numeric parse (decimal/scientific only, no hex/inf/nan).
std::optional<double> parse_number(std::string_view s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);
void append_line(const std::filesystem::path& path, std::string_view line);
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Wall-clock UTC timestamp, e.g. "2026-08-10T12:00:00Z".
std::string now_iso8601();

} // namespace protokg::util
