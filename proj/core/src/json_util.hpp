#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "rndkit/errors.hpp"

namespace rndkit::io::detail {

using ordered_json = nlohmann::ordered_json;

inline std::size_t line_of_offset(const std::string& text, std::size_t offset) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

inline ordered_json parse_json(const std::string& text, const std::string& origin) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": invalid JSON: " + e.what(),
                         line_of_offset(text, e.byte), "");
    }
}

inline std::string join_path(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

inline const ordered_json& require_member(const ordered_json& object, const std::string& origin,
                                          const std::string& path, const std::string& key) {
    if (!object.is_object()) {
        throw ParseError(origin + ": expected an object", 0, path);
    }
    const auto it = object.find(key);
    if (it == object.end()) {
        throw ParseError(origin + ": missing field", 0, join_path(path, key));
    }
    return *it;
}

inline double as_number(const ordered_json& value, const std::string& origin,
                        const std::string& path) {
    if (!value.is_number()) {
        throw ParseError(origin + ": expected a number", 0, path);
    }
    return value.get<double>();
}

inline int as_int(const ordered_json& value, const std::string& origin,
                  const std::string& path) {
    double d = 0.0;
    if (value.is_number_integer() || value.is_number_unsigned()) {
        d = value.get<double>();
    } else if (value.is_number_float() && value.get<double>() == std::floor(value.get<double>())) {
        d = value.get<double>();
    } else {
        throw ParseError(origin + ": expected an integer", 0, path);
    }
    if (d < -2147483648.0 || d > 2147483647.0) {
        throw ParseError(origin + ": integer out of range", 0, path);
    }
    return static_cast<int>(d);
}

inline std::string as_string(const ordered_json& value, const std::string& origin,
                             const std::string& path) {
    if (!value.is_string()) {
        throw ParseError(origin + ": expected a string", 0, path);
    }
    return value.get<std::string>();
}

inline const ordered_json& as_array(const ordered_json& value, const std::string& origin,
                                    const std::string& path) {
    if (!value.is_array()) {
        throw ParseError(origin + ": expected an array", 0, path);
    }
    return value;
}

inline double require_number(const ordered_json& object, const std::string& origin,
                             const std::string& path, const std::string& key) {
    return as_number(require_member(object, origin, path, key), origin, join_path(path, key));
}

inline int require_int(const ordered_json& object, const std::string& origin,
                       const std::string& path, const std::string& key) {
    return as_int(require_member(object, origin, path, key), origin, join_path(path, key));
}

inline std::string require_string(const ordered_json& object, const std::string& origin,
                                  const std::string& path, const std::string& key) {
    return as_string(require_member(object, origin, path, key), origin, join_path(path, key));
}

} // namespace rndkit::io::detail
