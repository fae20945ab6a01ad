#pragma once

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fracseq::detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

inline std::string join_ints(const std::vector<int>& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

inline int parse_int(std::string_view tok) {
    tok = trim(tok);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
        throw std::invalid_argument("not an integer: '" + std::string(tok) + "'");
    return value;
}

// U+2212 to '-'.
inline std::string ascii_minus(std::string_view body) {
    std::string norm;
    norm.reserve(body.size());
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body.compare(i, 3, "\xE2\x88\x92") == 0) {
            norm += '-';
            i += 2;
        } else {
            norm += body[i];
        }
    }
    return norm;
}

// Comma or whitespace separated integers; the Unicode minus sign is accepted.
inline std::vector<int> parse_int_list(std::string_view body) {
    std::string norm = ascii_minus(body);
    std::vector<int> out;
    std::string tok;
    bool item = false;  // an item since the last comma
    bool comma = false;
    auto flush = [&] {
        if (!trim(tok).empty()) {
            out.push_back(parse_int(tok));
            item = true;
        }
        tok.clear();
    };
    for (char c : norm) {
        if (c == ',') {
            flush();
            if (!item) throw std::invalid_argument("empty item in list '" + norm + "'");
            item = false;
            comma = true;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            tok += c;
        }
    }
    flush();
    if (comma && !item) throw std::invalid_argument("empty item in list '" + norm + "'");
    return out;
}

}  // namespace fracseq::detail
