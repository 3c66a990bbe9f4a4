/*
 * Copyright 2026 the phasecap authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "phasecap/capacity.hpp"
#include "phasecap/errors.hpp"
#include "phasecap/gaussian.hpp"
#include "phasecap/matrix.hpp"
#include "phasecap/oscillator.hpp"

namespace phasecap {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Serialization. All floating point is written with 17 significant digits
// so that emitted documents are reproducible byte for byte and round-trip
// through the parsers without loss.
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline void dump_json_rec(const json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t k = 0;
        for (auto it = j.begin(); it != j.end(); ++it, ++k) {
            out += pad_in + json(it.key()).dump() + ": ";
            dump_json_rec(it.value(), out, indent + 1);
            if (k + 1 < j.size()) out += ",";
            out += "\n";
        }
        out += pad + "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            out += pad_in;
            dump_json_rec(j[k], out, indent + 1);
            if (k + 1 < j.size()) out += ",";
            out += "\n";
        }
        out += pad + "]";
        return;
    }
    case json::value_t::number_float:
        out += format_double(j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}

} // namespace detail

/// Deterministic pretty-printer: sorted keys (nlohmann objects iterate in
/// key order), two-space indent, floats at 17 significant digits.
inline std::string dump_json(const json& j) {
    std::string out;
    detail::dump_json_rec(j, out, 0);
    out += "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Matrix documents: {"dim": d, "entries": [[...], ...]} row-major.
// ---------------------------------------------------------------------------

inline json matrix_to_json(const Matrix& m) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        entries.push_back(std::move(row));
    }
    return json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

inline json matrix_to_json(const SymmetricMatrix& m) { return matrix_to_json(m.mat()); }

inline Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw BadInputError("matrix document needs \"dim\" and \"entries\"");
    const auto dim = j.at("dim").get<std::size_t>();
    const json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != dim)
        throw BadInputError("matrix entries must hold dim rows");
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const json& row = entries[i];
        if (!row.is_array() || row.size() != dim)
            throw BadInputError("matrix entries must hold dim columns per row");
        for (std::size_t k = 0; k < dim; ++k) m(i, k) = row[k].get<double>();
    }
    return m;
}

inline SymmetricMatrix symmetric_from_json(const json& j) {
    try {
        return SymmetricMatrix(matrix_from_json(j));
    } catch (const NonSymmetricError& e) {
        throw BadInputError(std::string("matrix document is not symmetric: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Domain documents.
// ---------------------------------------------------------------------------

inline json ellipsoid_to_json(const PhaseSpaceEllipsoid& e) {
    return json{{"n", e.n},
                {"center", e.center},
                {"shape", matrix_to_json(e.shape)},
                {"level", e.level}};
}

inline PhaseSpaceEllipsoid ellipsoid_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("shape") || !j.contains("level"))
        throw BadInputError("ellipsoid document needs \"n\", \"shape\" and \"level\"");
    const auto n = j.at("n").get<std::size_t>();
    std::vector<double> center(2 * n, 0.0);
    if (j.contains("center")) center = j.at("center").get<std::vector<double>>();
    return PhaseSpaceEllipsoid(n, std::move(center), symmetric_from_json(j.at("shape")),
                               j.at("level").get<double>());
}

inline json state_to_json(const GaussianState& g) {
    return json{{"n", g.n},
                {"hbar", g.hbar},
                {"X", matrix_to_json(g.x)},
                {"Y", matrix_to_json(g.y)}};
}

inline GaussianState state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("hbar") || !j.contains("X") ||
        !j.contains("Y"))
        throw BadInputError("state document needs \"n\", \"hbar\", \"X\" and \"Y\"");
    return GaussianState(j.at("n").get<std::size_t>(), j.at("hbar").get<double>(),
                         symmetric_from_json(j.at("X")), symmetric_from_json(j.at("Y")));
}

inline json blob_to_json(const QuantumBlob& b) {
    return json{{"center", b.center}, {"map", matrix_to_json(b.map)}, {"hbar", b.hbar}};
}

inline QuantumBlob blob_from_json(const json& j) {
    if (!j.is_object() || !j.contains("center") || !j.contains("map") || !j.contains("hbar"))
        throw BadInputError("blob document needs \"center\", \"map\" and \"hbar\"");
    return QuantumBlob{j.at("center").get<std::vector<double>>(),
                       matrix_from_json(j.at("map")), j.at("hbar").get<double>()};
}

inline json hamiltonian_to_json(const QuadraticHamiltonian& h) {
    return json{{"n", h.n}, {"hbar", h.hbar}, {"M", matrix_to_json(h.m)}};
}

inline QuadraticHamiltonian hamiltonian_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("hbar") || !j.contains("M"))
        throw BadInputError("Hamiltonian document needs \"n\", \"hbar\" and \"M\"");
    return QuadraticHamiltonian(j.at("n").get<std::size_t>(), j.at("hbar").get<double>(),
                                symmetric_from_json(j.at("M")));
}

inline json spectrum_to_json(const SymplecticSpectrum& s) {
    return json{{"n", s.n()}, {"values", s.values}};
}

inline json claim_to_json(const ClaimReport& r) {
    return json{{"lhs", r.lhs},
                {"rhs", r.rhs},
                {"ratio", r.ratio},
                {"match", r.match},
                {"expected_lhs", r.expected_lhs}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInputError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw BadInputError("invalid JSON in " + path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// CSV: sampled fields "x,re,im" or "x,R,Phi"; derived fields "x,p,value";
// contours "x,p". All floating point at 17 significant digits.
// ---------------------------------------------------------------------------

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};

inline CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw BadInputError("empty CSV input");
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) t.header.push_back(cell);
    if (t.header.empty()) throw BadInputError("CSV header is empty");
    t.columns.resize(t.header.size());
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::size_t c = 0;
        while (std::getline(ls, cell, ',')) {
            if (c >= t.columns.size())
                throw BadInputError("CSV row " + std::to_string(row) + " has too many cells");
            try {
                t.columns[c].push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw BadInputError("CSV row " + std::to_string(row) + " has a non-numeric cell");
            }
            ++c;
        }
        if (c != t.columns.size())
            throw BadInputError("CSV row " + std::to_string(row) + " has too few cells");
    }
    if (t.columns.front().empty()) throw BadInputError("CSV has no data rows");
    return t;
}

inline CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadInputError("cannot open file: " + path);
    return read_csv(in);
}

inline void write_csv(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << format_double(columns[c][r]) << (c + 1 < columns.size() ? "," : "\n");
}

} // namespace phasecap
