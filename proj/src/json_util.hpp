#pragma once

// Strict-reading helpers shared by the file-format readers.

#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "accord/error.hpp"

namespace accord::detail {

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what(), e.byte);
  }
}

/// Every key in `keys` present, and nothing else.
inline void require_keys(const nlohmann::json& j, std::initializer_list<std::string_view> keys,
                         const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  for (auto k : keys)
    if (!j.contains(k)) throw ValidationError(where + ": missing key '" + std::string(k) + "'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (auto k : keys) known = known || it.key() == k;
    if (!known) throw ValidationError(where + ": unknown key '" + it.key() + "'");
  }
}

/// Like require_keys but only rejects unknown keys.
inline void allow_keys(const nlohmann::json& j, std::initializer_list<std::string_view> keys,
                       const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (auto k : keys) known = known || it.key() == k;
    if (!known) throw ValidationError(where + ": unknown key '" + it.key() + "'");
  }
}

inline std::string get_string(const nlohmann::json& j, std::string_view key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    throw ValidationError(where + ": '" + std::string(key) + "' must be a string");
  return it->get<std::string>();
}

inline double get_number(const nlohmann::json& j, std::string_view key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number())
    throw ValidationError(where + ": '" + std::string(key) + "' must be a number");
  return it->get<double>();
}

inline long long get_integer(const nlohmann::json& j, std::string_view key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer())
    throw ValidationError(where + ": '" + std::string(key) + "' must be an integer");
  return it->get<long long>();
}

}  // namespace accord::detail
