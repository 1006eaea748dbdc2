#ifndef KAT_SRC_TEXT_UTIL_HPP
#define KAT_SRC_TEXT_UTIL_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace kat::detail {

inline bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

inline bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline bool is_identifier(std::string_view s) {
    if (s.empty() || !is_ident_start(s.front())) return false;
    for (char c : s)
        if (!is_ident_char(c)) return false;
    return true;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

} // namespace kat::detail

#endif
