#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace notelab {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Writes content to a temp file in the same directory, then renames it over
// the destination, so a failed run never leaves a partial file at the final
// path.
void atomic_write(const std::filesystem::path& path, const std::string& content);

void write_jsonl(const std::filesystem::path& path, const std::vector<ordered_json>& records);
std::vector<json> read_jsonl(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
std::vector<std::string> read_lines(const std::filesystem::path& path);

}  // namespace notelab
