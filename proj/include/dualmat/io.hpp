#pragma once

#include <cmath>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "dual_matrix.hpp"
#include "error.hpp"

namespace dualmat {

// On-disk format: {"rows": m, "cols": n, "standard": [[[re, im], ...], ...],
// "infinitesimal": [...]}.  Doubles round-trip bit-exactly through the
// shortest-representation serializer.
using json = nlohmann::ordered_json;

namespace detail {

inline ComplexMatrix part_from_json(const json& arr, int rows, int cols,
                                    const std::string& label) {
    if (!arr.is_array() || static_cast<int>(arr.size()) != rows) {
        throw ParseError(label + ": expected " + std::to_string(rows) + " rows");
    }
    ComplexMatrix M(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = arr[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            throw ParseError(label + " row " + std::to_string(i) + ": expected " +
                             std::to_string(cols) + " entries");
        }
        for (int j = 0; j < cols; ++j) {
            const json& e = row[j];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw ParseError(label + " entry (" + std::to_string(i) + ", " +
                                 std::to_string(j) + "): expected [re, im]");
            }
            double re = e[0].get<double>();
            double im = e[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im)) {
                throw ParseError(label + " entry (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ") is not finite");
            }
            M(i, j) = Complex{re, im};
        }
    }
    return M;
}

inline json part_to_json(const ComplexMatrix& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) {
            row.push_back(json::array({M(i, j).real(), M(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

inline json matrix_to_json(const DualMatrix& M) {
    json out;
    out["rows"] = M.rows();
    out["cols"] = M.cols();
    out["standard"] = detail::part_to_json(M.S);
    out["infinitesimal"] = detail::part_to_json(M.D);
    return out;
}

inline DualMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("matrix document must be a JSON object");
    for (const char* key : {"rows", "cols", "standard", "infinitesimal"}) {
        if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    }
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
        throw ParseError("'rows' and 'cols' must be integers");
    }
    int rows = j["rows"].get<int>();
    int cols = j["cols"].get<int>();
    if (rows < 0 || cols < 0) throw ParseError("'rows' and 'cols' must be nonnegative");
    ComplexMatrix S = detail::part_from_json(j["standard"], rows, cols, "standard");
    ComplexMatrix D = detail::part_from_json(j["infinitesimal"], rows, cols, "infinitesimal");
    return DualMatrix(std::move(S), std::move(D));
}

inline DualMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
    return matrix_from_json(j);
}

inline void write_matrix_file(const std::string& path, const DualMatrix& M) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << matrix_to_json(M).dump(2) << "\n";
}

}  // namespace dualmat
