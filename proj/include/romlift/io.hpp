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

// Text formats: circuit JSON, oracle tables and key=value config files.

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "romlift/circuit.hpp"
#include "romlift/error.hpp"
#include "romlift/oracle.hpp"

namespace romlift::io {

namespace detail {

inline int line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

/// Drops a trailing `#` comment and surrounding blanks.
inline std::string strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

inline int as_int(const nlohmann::json &j, const std::string &path) {
    if (!j.is_number_integer()) {
        throw ParseError(path + ": expected an integer");
    }
    return j.get<int>();
}

inline std::vector<int> as_wires(const nlohmann::json &j, const std::string &path) {
    if (!j.is_array()) {
        throw ParseError(path + ": expected an array of wire indices");
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

inline double as_double(const nlohmann::json &j, const std::string &path) {
    if (!j.is_number()) {
        throw ParseError(path + ": expected a number");
    }
    return j.get<double>();
}

inline Matrix as_matrix(const nlohmann::json &j, const std::string &path) {
    if (!j.is_array()) {
        throw ParseError(path + ": expected an array of rows");
    }
    const std::size_t dim = j.size();
    std::vector<amplitude> data;
    data.reserve(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const auto rp = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != dim) {
            throw ParseError(rp + ": expected a row of " + std::to_string(dim) + " entries");
        }
        for (std::size_t c = 0; c < dim; ++c) {
            const auto &e = j[r][c];
            const auto ep = rp + "[" + std::to_string(c) + "]";
            if (e.is_number()) {
                data.emplace_back(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2) {
                data.emplace_back(as_double(e[0], ep + "[0]"), as_double(e[1], ep + "[1]"));
            } else {
                throw ParseError(ep + ": expected [re, im]");
            }
        }
    }
    return Matrix(dim, std::move(data));
}

}  // namespace detail

/// Parses a circuit document. Syntax errors carry the line number; structural errors
/// name the JSON path of the offending field.
inline QueryCircuit parse_circuit(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(),
                         detail::line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
    }
    if (!doc.is_object()) {
        throw ParseError("circuit document must be a JSON object", 1);
    }
    for (const char *key : {"n", "m", "w", "layers", "output_wires"}) {
        if (!doc.contains(key)) {
            throw ParseError(std::string("missing field '") + key + "'");
        }
    }
    RegisterLayout layout{detail::as_int(doc["n"], "n"), detail::as_int(doc["m"], "m"),
                          detail::as_int(doc["w"], "w")};
    if (!doc["layers"].is_array()) {
        throw ParseError("layers: expected an array");
    }
    std::vector<Layer> layers;
    for (std::size_t i = 0; i < doc["layers"].size(); ++i) {
        const auto &l = doc["layers"][i];
        const auto path = "layers[" + std::to_string(i) + "]";
        if (l.is_object() && l.contains("oracle")) {
            if (l["oracle"] != true) {
                throw ParseError(path + ".oracle: expected true");
            }
            layers.emplace_back(OracleCall{});
        } else if (l.is_object() && l.contains("unitary") && l["unitary"].is_object()) {
            const auto &u = l["unitary"];
            if (!u.contains("wires") || !u.contains("matrix")) {
                throw ParseError(path + ".unitary: needs 'wires' and 'matrix'");
            }
            layers.emplace_back(UnitaryLayer{detail::as_wires(u["wires"], path + ".unitary.wires"),
                                             detail::as_matrix(u["matrix"], path + ".unitary.matrix")});
        } else {
            throw ParseError(path + ": expected {\"oracle\": true} or {\"unitary\": {...}}");
        }
    }
    std::vector<int> inputs;
    if (doc.contains("input_wires")) {
        inputs = detail::as_wires(doc["input_wires"], "input_wires");
    }
    try {
        return QueryCircuit(layout, std::move(layers), detail::as_wires(doc["output_wires"], "output_wires"),
                            std::move(inputs));
    } catch (const ParseError &) {
        throw;
    } catch (const Error &e) {
        throw ParseError(std::string("invalid circuit: ") + e.what());
    }
}

inline nlohmann::ordered_json circuit_to_json(const QueryCircuit &c) {
    nlohmann::ordered_json doc;
    doc["n"] = c.layout().n;
    doc["m"] = c.layout().m;
    doc["w"] = c.layout().w;
    auto layers = nlohmann::ordered_json::array();
    for (const auto &layer : c.layers()) {
        if (const auto *u = std::get_if<UnitaryLayer>(&layer)) {
            auto rows = nlohmann::ordered_json::array();
            for (std::size_t r = 0; r < u->matrix.dim(); ++r) {
                auto row = nlohmann::ordered_json::array();
                for (std::size_t col = 0; col < u->matrix.dim(); ++col) {
                    row.push_back({u->matrix(r, col).real(), u->matrix(r, col).imag()});
                }
                rows.push_back(std::move(row));
            }
            layers.push_back({{"unitary", {{"wires", u->wires}, {"matrix", std::move(rows)}}}});
        } else {
            layers.push_back({{"oracle", true}});
        }
    }
    doc["layers"] = std::move(layers);
    doc["output_wires"] = c.output_wires();
    if (c.input_width() > 0) {
        doc["input_wires"] = c.input_wires();
    }
    return doc;
}

/// Parses `n=<int> m=<int>` followed by `x_bits -> y_bits` lines. Blank lines and `#`
/// comments are ignored; points may be omitted.
inline PartialFunction parse_partial_function(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    std::optional<PartialFunction> f;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto line = detail::strip_comment(raw);
        if (line.empty()) {
            continue;
        }
        if (!f) {
            int n = -1, m = -1;
            char tail = 0;
            if (std::sscanf(line.c_str(), "n=%d m=%d %c", &n, &m, &tail) != 2) {
                throw ParseError("expected header 'n=<int> m=<int>'", lineno);
            }
            try {
                f.emplace(Signature{n, m});
            } catch (const Error &e) {
                throw ParseError(e.what(), lineno);
            }
            continue;
        }
        const auto arrow = line.find("->");
        if (arrow == std::string::npos) {
            throw ParseError("expected 'x_bits -> y_bits'", lineno);
        }
        Bits x, y;
        try {
            x = Bits::parse(detail::trim(std::string_view(line).substr(0, arrow)));
            y = Bits::parse(detail::trim(std::string_view(line).substr(arrow + 2)));
        } catch (const ParseError &e) {
            throw ParseError(e.what(), lineno);
        }
        const auto sig = f->signature();
        if (x.width != sig.n || y.width != sig.m) {
            throw ParseError("expected " + std::to_string(sig.n) + "-bit input and " + std::to_string(sig.m) +
                                 "-bit output",
                             lineno);
        }
        if (f->defines(static_cast<Point>(x.value))) {
            throw ParseError("point " + x.str() + " defined twice", lineno);
        }
        f->insert(static_cast<Point>(x.value), static_cast<Value>(y.value));
    }
    if (!f) {
        throw ParseError("missing header 'n=<int> m=<int>'", lineno + 1);
    }
    return *f;
}

/// As parse_partial_function, but every point must be present.
inline Oracle parse_oracle(std::string_view text) {
    const auto f = parse_partial_function(text);
    if (!f.total()) {
        throw ParseError("oracle file defines " + std::to_string(f.size()) + " of " +
                         std::to_string(f.signature().points()) + " points");
    }
    return Oracle(f.signature(), [&] {
        std::vector<Value> table;
        for (Point x = 0; x < f.signature().points(); ++x) {
            table.push_back(*f.at(x));
        }
        return table;
    }());
}

inline std::string format_partial_function(const PartialFunction &f) {
    std::string out = "n=" + std::to_string(f.signature().n) + " m=" + std::to_string(f.signature().m) + "\n";
    for (const auto &[x, y] : f.pairs()) {
        out += bit_string(x, f.signature().n) + " -> " + bit_string(y, f.signature().m) + "\n";
    }
    return out;
}

/// `key = value` lines; `#` starts a comment. Later keys override earlier ones.
inline std::map<std::string, std::string> parse_config(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    std::map<std::string, std::string> out;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto line = detail::strip_comment(raw);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", lineno);
        }
        auto key = detail::trim(std::string_view(line).substr(0, eq));
        if (key.empty()) {
            throw ParseError("empty key", lineno);
        }
        out[std::move(key)] = detail::trim(std::string_view(line).substr(eq + 1));
    }
    return out;
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace romlift::io
