// Copyright 2026 The romlift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Aligned text rendering of JSON reports. Scalars become `key  value` lines, arrays of
// objects become column tables, nested objects become indented sections.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace romlift::report {

using json = nlohmann::ordered_json;

inline std::string scalar_text(const json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
        return buf;
    }
    return v.dump();
}

namespace detail {

inline bool is_scalar_like(const json &v) {
    if (!v.is_array()) {
        return !v.is_object();
    }
    return std::none_of(v.begin(), v.end(), [](const json &e) { return e.is_object() || e.is_array(); });
}

inline bool is_row_array(const json &v) {
    return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const json &e) { return e.is_object(); });
}

inline void render_rows(const json &rows, const std::string &indent, std::string &out) {
    std::vector<std::string> cols;
    for (const auto &row : rows) {
        for (const auto &[k, v] : row.items()) {
            if (is_scalar_like(v) && std::find(cols.begin(), cols.end(), k) == cols.end()) {
                cols.push_back(k);
            }
        }
    }
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        width[c] = cols[c].size();
    }
    for (const auto &row : rows) {
        std::vector<std::string> line;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            line.push_back(row.contains(cols[c]) ? scalar_text(row[cols[c]]) : "");
            width[c] = std::max(width[c], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string> &line) {
        std::string text = indent;
        for (std::size_t c = 0; c < line.size(); ++c) {
            text += line[c];
            if (c + 1 < line.size()) {
                text += std::string(width[c] - line[c].size() + 2, ' ');
            }
        }
        out += text + "\n";
    };
    emit(cols);
    std::vector<std::string> rule;
    for (auto w : width) {
        rule.emplace_back(w, '-');
    }
    emit(rule);
    for (const auto &line : cells) {
        emit(line);
    }
}

inline void render_object(const json &obj, const std::string &indent, std::string &out) {
    std::size_t key_width = 0;
    for (const auto &[k, v] : obj.items()) {
        if (is_scalar_like(v)) {
            key_width = std::max(key_width, k.size());
        }
    }
    for (const auto &[k, v] : obj.items()) {
        if (is_scalar_like(v)) {
            out += indent + k + std::string(key_width - k.size() + 2, ' ') + scalar_text(v) + "\n";
        }
    }
    for (const auto &[k, v] : obj.items()) {
        if (v.is_object()) {
            out += indent + "[" + k + "]\n";
            render_object(v, indent + "  ", out);
        } else if (is_row_array(v)) {
            out += indent + "[" + k + "]\n";
            // Records with nested fields render as sections.
            const bool nested = std::any_of(v.begin(), v.end(), [](const json &row) {
                return std::any_of(row.begin(), row.end(), [](const json &e) { return !is_scalar_like(e); });
            });
            if (nested) {
                for (const auto &row : v) {
                    render_object(row, indent + "  ", out);
                    out += "\n";
                }
            } else {
                render_rows(v, indent + "  ", out);
            }
        } else if (v.is_array() && !is_scalar_like(v)) {
            out += indent + k + "  " + v.dump() + "\n";
        }
    }
}

}  // namespace detail

/// Text table view of a JSON report.
inline std::string render_table(const json &doc) {
    std::string out;
    if (doc.is_object()) {
        detail::render_object(doc, "", out);
    } else if (detail::is_row_array(doc)) {
        detail::render_rows(doc, "", out);
    } else {
        out = scalar_text(doc) + "\n";
    }
    return out;
}

}  // namespace romlift::report
