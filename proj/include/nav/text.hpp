#pragma once

// Small string helpers: normalization for command matching, deterministic
// number formatting for artifacts, template placeholder substitution, CSV.

#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace nav {

// Lowercases, maps '-'/'_' to spaces, collapses runs of whitespace.
inline std::string normalize_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        unsigned char uc = static_cast<unsigned char>(c);
        if (uc == '-' || uc == '_' || std::isspace(uc)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(uc)));
    }
    return out;
}

// Word-boundary substring test on already-normalized strings.
inline bool contains_phrase(const std::string& text, const std::string& phrase) {
    if (phrase.empty()) return false;
    const std::string padded_text = " " + text + " ";
    const std::string padded_phrase = " " + phrase + " ";
    return padded_text.find(padded_phrase) != std::string::npos;
}

// Fixed-precision float; deterministic across runs and platforms we target.
inline std::string fmt_fixed(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

// Compact float for prompts and SVG: %g with enough digits, no trailing cruft.
inline std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// Shortest representation that parses back to exactly the same double; used
// for persisted logs so recomputation from files is bit-faithful.
inline std::string fmt_exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Replaces every "{key}" occurrence for the given keys; unknown braces are
// left untouched (templates may legitimately contain JSON braces).
inline std::string substitute(std::string text,
                              const std::map<std::string, std::string>& values) {
    for (const auto& [key, value] : values) {
        const std::string token = "{" + key + "}";
        std::size_t pos = 0;
        while ((pos = text.find(token, pos)) != std::string::npos) {
            text.replace(pos, token.size(), value);
            pos += value.size();
        }
    }
    return text;
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace nav
