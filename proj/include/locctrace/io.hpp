// Copyright 2026 The locctrace developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Matrix file formats and JSON records for the CLI.
 *
 * json-dense: {"rows": r, "cols": c, "entries": [[...row...], ...]} where
 * each entry is [re, im] (or a bare real). csv-complex: one row per line,
 * cells like `0.5-0.25i` or bare reals. Doubles are written with enough
 * digits to round-trip bit-exactly.
 */

#pragma once

#include <nlohmann/json.hpp>

#include <charconv>
#include <complex>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "locctrace/errors.hpp"
#include "locctrace/matrix.hpp"
#include "locctrace/protocol.hpp"

namespace locctrace {

using Json = nlohmann::ordered_json;

enum class MatrixFormat { JsonDense, CsvComplex };

inline MatrixFormat format_from_path(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return MatrixFormat::CsvComplex;
    return MatrixFormat::JsonDense;
}

namespace io_detail {

inline std::string dump_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline Complex parse_complex_cell(const std::string& raw, int row) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty())
        throw InvalidInputError("matrix csv: empty cell in row " + std::to_string(row));
    bool has_i = (s.back() == 'i' || s.back() == 'j');
    if (!has_i) {
        try {
            return Complex(std::stod(s), 0.0);
        } catch (...) {
            throw InvalidInputError("matrix csv: bad cell '" + raw + "' in row " +
                                    std::to_string(row));
        }
    }
    s.pop_back();
    // split at the sign of the imaginary part (skipping a leading sign and
    // exponent signs)
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    try {
        if (split == std::string::npos) return Complex(0.0, std::stod(s.empty() ? "1" : s));
        const std::string re = s.substr(0, split);
        std::string im = s.substr(split);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return Complex(std::stod(re), std::stod(im));
    } catch (...) {
        throw InvalidInputError("matrix csv: bad cell '" + raw + "' in row " +
                                std::to_string(row));
    }
}

} // namespace io_detail

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    Json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["entries"] = std::move(rows);
    return out;
}

inline Matrix matrix_from_json(const Json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw InvalidInputError("matrix json: need keys rows, cols, entries");
    const long long r = j["rows"].get<long long>();
    const long long c = j["cols"].get<long long>();
    if (r < 1 || c < 1) throw InvalidInputError("matrix json: rows and cols must be >= 1");
    const Json& entries = j["entries"];
    if (!entries.is_array() || static_cast<long long>(entries.size()) != r)
        throw InvalidInputError("matrix json: entries must hold one array per row");
    Matrix m(r, c);
    for (long long i = 0; i < r; ++i) {
        const Json& row = entries[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<long long>(row.size()) != c)
            throw InvalidInputError("matrix json: ragged row " + std::to_string(i));
        for (long long k = 0; k < c; ++k) {
            const Json& cell = row[static_cast<size_t>(k)];
            if (cell.is_number()) {
                m(i, k) = Complex(cell.get<double>(), 0.0);
            } else if (cell.is_array() && cell.size() == 2) {
                m(i, k) = Complex(cell[0].get<double>(), cell[1].get<double>());
            } else {
                throw InvalidInputError("matrix json: bad entry in row " + std::to_string(i));
            }
        }
    }
    return m;
}

inline Matrix load_matrix(const std::string& path, MatrixFormat format) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("load_matrix: cannot open '" + path + "'");
    if (format == MatrixFormat::JsonDense) {
        Json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw InvalidInputError("load_matrix: bad json in '" + path + "': " + e.what());
        }
        return matrix_from_json(j);
    }
    std::vector<std::vector<Complex>> rows;
    std::string line;
    int row_idx = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::vector<Complex> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(io_detail::parse_complex_cell(cell, row_idx));
        if (!rows.empty() && row.size() != rows[0].size())
            throw InvalidInputError("load_matrix: ragged row " + std::to_string(row_idx) +
                                    " in '" + path + "'");
        rows.push_back(std::move(row));
        ++row_idx;
    }
    if (rows.empty()) throw InvalidInputError("load_matrix: no data in '" + path + "'");
    Matrix m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

inline Matrix load_matrix(const std::string& path) { return load_matrix(path, format_from_path(path)); }

inline void save_matrix(const Matrix& m, const std::string& path, MatrixFormat format) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("save_matrix: cannot open '" + path + "'");
    if (format == MatrixFormat::JsonDense) {
        out << matrix_to_json(m).dump() << "\n";
        return;
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const Complex v = m(i, j);
            if (j) out << ",";
            out << io_detail::dump_double(v.real());
            if (v.imag() >= 0.0) out << "+";
            out << io_detail::dump_double(v.imag()) << "i";
        }
        out << "\n";
    }
}

inline void save_matrix(const Matrix& m, const std::string& path) {
    save_matrix(m, path, format_from_path(path));
}

inline Json complex_to_json(const Complex& v) { return Json::array({v.real(), v.imag()}); }

inline Json shot_table_to_json(const ShotTable& table) {
    Json j;
    j["iterations"] = table.iterations();
    j["shots"] = table.shots();
    j["bits"] = table.raw_bits();
    Json transcript = Json::array();
    for (const auto& e : table.transcript)
        transcript.push_back(Json{{"party", e.party == Party::Alice ? "alice" : "bob"},
                                  {"round", e.round},
                                  {"payload_bits", e.payload_bits}});
    j["transcript"] = std::move(transcript);
    return j;
}

inline Json trace_estimate_to_json(const TraceEstimate& est) {
    Json j;
    j["value"] = complex_to_json(est.value);
    j["empirical_variance"] = est.empirical_variance;
    j["queries_simulated"] = est.n_queries_simulated;
    Json comps = Json::array();
    for (const auto& c : est.components) {
        comps.push_back(Json{{"x", {c.x[0], c.x[1]}},
                             {"y", {c.y[0], c.y[1]}},
                             {"z", {{c.z[0][0], c.z[0][1]}, {c.z[1][0], c.z[1][1]}}}});
    }
    j["components"] = std::move(comps);
    return j;
}

} // namespace locctrace
