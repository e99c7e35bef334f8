// SPDX-License-Identifier: Apache-2.0
//
// holomimo: holographic MIMO channel and capacity simulation library
// Copyright (C) 2026 The holomimo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HOLOMIMO_CSV_HPP
#define HOLOMIMO_CSV_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "error.hpp"

namespace holomimo
{
    // Shortest round-trip decimal form, '.' separator regardless of locale
    inline std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    }

    inline std::string format_number(std::size_t v) { return std::to_string(v); }

    struct csv_table
    {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;

        std::string to_string() const
        {
            std::string out;
            auto emit = [&](const std::vector<std::string> &cells)
            {
                for (std::size_t i = 0; i < cells.size(); ++i)
                {
                    if (i)
                        out += ',';
                    out += cells[i];
                }
                out += '\n';
            };
            emit(header);
            for (const auto &r : rows)
                emit(r);
            return out;
        }

        std::size_t column(const std::string &name) const
        {
            for (std::size_t i = 0; i < header.size(); ++i)
                if (header[i] == name)
                    return i;
            fail(error_category::input, "csv: no column named '" + name + "'");
        }

        // Numeric value of a cell; empty cells read as NaN
        double number(std::size_t row, std::size_t col) const
        {
            const std::string &s = rows.at(row).at(col);
            if (s.empty())
                return std::nan("");
            double v = 0.0;
            auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc() || res.ptr != s.data() + s.size())
                fail(error_category::input, "csv: cell '" + s + "' is not a number");
            return v;
        }
    };

    inline csv_table parse_csv(const std::string &text)
    {
        csv_table t;
        std::istringstream in(text);
        std::string line;
        bool first = true;
        while (std::getline(in, line))
        {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            std::vector<std::string> cells;
            std::size_t start = 0;
            while (true)
            {
                const auto comma = line.find(',', start);
                cells.push_back(line.substr(start, comma - start));
                if (comma == std::string::npos)
                    break;
                start = comma + 1;
            }
            if (first)
                t.header = std::move(cells);
            else
                t.rows.push_back(std::move(cells));
            first = false;
        }
        if (t.header.empty())
            fail(error_category::input, "csv: missing header row");
        return t;
    }

    inline std::string read_file(const std::filesystem::path &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            fail(error_category::io, "cannot open " + path.string());
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    inline csv_table read_csv(const std::filesystem::path &path) { return parse_csv(read_file(path)); }

    // Writes to a sibling temporary file and renames it into place
    inline void write_file_atomic(const std::filesystem::path &path, const std::string &content)
    {
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f)
                fail(error_category::io, "cannot write " + tmp.string());
            f << content;
            if (!f)
                fail(error_category::io, "write failed for " + tmp.string());
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec)
            fail(error_category::io, "cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

#endif
