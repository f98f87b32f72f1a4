#pragma once

// Strict field readers shared by the document loaders. Every document in
// this project rejects unknown keys and reports the offending field path.

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

namespace d2d::json_util {

using nlohmann::json;

/// Parses text, converting nlohmann parse errors into ParseError with a line number.
json parse_document(std::string_view text, std::string_view what);

/// Throws ParseError if `obj` is not an object or has a key outside `allowed`.
void require_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                  const std::string& where);

const json& require(const json& obj, const char* key, const std::string& where);

double get_number(const json& obj, const char* key, const std::string& where);
double get_number_or(const json& obj, const char* key, double fallback, const std::string& where);
std::int64_t get_integer(const json& obj, const char* key, const std::string& where);
std::int64_t get_integer_or(const json& obj, const char* key, std::int64_t fallback,
                            const std::string& where);
std::uint64_t get_unsigned_or(const json& obj, const char* key, std::uint64_t fallback,
                              const std::string& where);
std::string get_string(const json& obj, const char* key, const std::string& where);
bool get_bool_or(const json& obj, const char* key, bool fallback, const std::string& where);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace d2d::json_util
