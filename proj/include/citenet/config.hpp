#pragma once

#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace citenet {

/// Flat "key = value" config block. '#' starts a comment; values may be
/// comma-separated lists. Keys are unique; a repeated key is an error.
using ConfigMap = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace detail

inline ConfigMap parse_config(std::istream& in) {
    ConfigMap out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = detail::trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        if (!out.emplace(key, value).second)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": duplicate key '" + key + "'");
    }
    return out;
}

inline std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string token;
    std::istringstream ss(value);
    while (std::getline(ss, token, ',')) {
        token = detail::trim(token);
        if (!token.empty()) items.push_back(token);
    }
    return items;
}

inline double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not a number: '" + s + "'");
    }
}

inline long long parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not an integer: '" + s + "'");
    }
}

inline std::vector<double> parse_double_list(const std::string& value, const std::string& what) {
    std::vector<double> out;
    for (const auto& item : split_list(value)) out.push_back(parse_double(item, what));
    return out;
}

}  // namespace citenet
