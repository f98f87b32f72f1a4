#include "d2d/json_util.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "d2d/errors.hpp"

namespace d2d::json_util {

namespace {

std::string field(const std::string& where, const char* key) {
  return where.empty() ? std::string(key) : where + "." + key;
}

}  // namespace

json parse_document(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    std::ostringstream msg;
    msg << what << ": malformed document at line " << line << " (byte " << e.byte << ")";
    throw ParseError(msg.str());
  }
}

void require_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                  const std::string& where) {
  if (!obj.is_object()) {
    throw ParseError((where.empty() ? std::string("document") : where) + ": expected an object");
  }
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ParseError(field(where, item.key().c_str()) + ": unknown field");
    }
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(field(where, key) + ": missing field");
  return *it;
}

double get_number(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) throw ParseError(field(where, key) + ": expected a number");
  return v.get<double>();
}

double get_number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? get_number(obj, key, where) : fallback;
}

std::int64_t get_integer(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(field(where, key) + ": expected an integer");
  return v.get<std::int64_t>();
}

std::int64_t get_integer_or(const json& obj, const char* key, std::int64_t fallback,
                            const std::string& where) {
  return obj.contains(key) ? get_integer(obj, key, where) : fallback;
}

std::uint64_t get_unsigned_or(const json& obj, const char* key, std::uint64_t fallback,
                              const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError(field(where, key) + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) throw ParseError(field(where, key) + ": expected a string");
  return v.get<std::string>();
}

bool get_bool_or(const json& obj, const char* key, bool fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ParseError(field(where, key) + ": expected true or false");
  return v.get<bool>();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw ConfigError("write failed for " + path.string());
}

}  // namespace d2d::json_util
