// Copyright 2026 The tcue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TCUE__JSON_UTIL_HPP_
#define TCUE__JSON_UTIL_HPP_

#include <cstdint>
#include <string>

#include <json.hpp>

#include "tcue/errors.hpp"
#include "tcue/geometry.hpp"

namespace tcue::detail
{

using Json = nlohmann::json;

inline const Json & require(const Json & obj, const char * key, const std::string & where)
{
  if (!obj.is_object()) {
    throw ParseError(where + " must be an object");
  }
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError("missing field " + where + (where.empty() ? "" : ".") + key);
  }
  return *it;
}

inline double as_number(const Json & value, const std::string & what)
{
  if (!value.is_number()) {
    throw ParseError(what + " must be a number");
  }
  return value.get<double>();
}

inline bool as_bool(const Json & value, const std::string & what)
{
  if (!value.is_boolean()) {
    throw ParseError(what + " must be a boolean");
  }
  return value.get<bool>();
}

inline std::string as_string(const Json & value, const std::string & what)
{
  if (!value.is_string()) {
    throw ParseError(what + " must be a string");
  }
  return value.get<std::string>();
}

inline std::int64_t as_int(const Json & value, const std::string & what)
{
  if (!value.is_number_integer()) {
    throw ParseError(what + " must be an integer");
  }
  return value.get<std::int64_t>();
}

inline std::uint64_t as_uint(const Json & value, const std::string & what)
{
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
    throw ParseError(what + " must be a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

inline Point2 as_point(const Json & value, const std::string & what)
{
  if (!value.is_array() || value.size() != 2) {
    throw ParseError(what + " must be a two-element array");
  }
  return {as_number(value[0], what + "[0]"), as_number(value[1], what + "[1]")};
}

inline Json point_json(const Point2 & p)
{
  return Json::array({p.x, p.y});
}

/// Optional numeric override: leaves `out` untouched when `key` is absent.
inline void read_number(const Json & obj, const char * key, double & out, const std::string & where)
{
  if (const auto it = obj.find(key); it != obj.end()) {
    out = as_number(*it, where + "." + key);
  }
}

}  // namespace tcue::detail

#endif  // TCUE__JSON_UTIL_HPP_
