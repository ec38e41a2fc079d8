#ifndef STIEFEL_IO_HPP
#define STIEFEL_IO_HPP

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stiefel/equivariance.hpp"
#include "stiefel/error.hpp"
#include "stiefel/homotopy.hpp"
#include "stiefel/matrix.hpp"

namespace stiefel {

using json = nlohmann::json;

/// Shortest decimal string that parses back to exactly `v`.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// JSON: {"rows": m, "cols": d, "data": [row-major numbers]}
// ---------------------------------------------------------------------------

inline json to_json(const Matrix& a) {
    return json{{"rows", a.rows()}, {"cols", a.cols()}, {"data", a.row_major()}};
}

inline Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
        throw ParseError("matrix object needs \"rows\", \"cols\" and \"data\"");
    }
    const auto& rows = j.at("rows");
    const auto& cols = j.at("cols");
    if (!rows.is_number_unsigned() || !cols.is_number_unsigned()) {
        throw ParseError("\"rows\" and \"cols\" must be positive integers");
    }
    const auto r = rows.get<std::size_t>();
    const auto c = cols.get<std::size_t>();
    if (r == 0 || c == 0) {
        throw ParseError("\"rows\" and \"cols\" must be positive integers");
    }
    const auto& data = j.at("data");
    if (!data.is_array()) {
        throw ParseError("\"data\" must be an array");
    }
    if (data.size() != r * c) {
        throw ParseError("\"data\" has " + std::to_string(data.size()) + " entries, expected " +
                         std::to_string(r * c));
    }
    std::vector<double> values;
    values.reserve(data.size());
    for (const auto& v : data) {
        if (!v.is_number()) {
            throw ParseError("non-numeric entry in \"data\"");
        }
        values.push_back(v.get<double>());
    }
    return Matrix::from_row_major(r, c, values);
}

inline Matrix parse_matrix_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    return matrix_from_json(j);
}

// ---------------------------------------------------------------------------
// CSV: one matrix row per line, comma separated. Lines starting with '#'
// are comments; blank lines separate consecutive matrices.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_number(std::string_view token, std::size_t line_no) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": cannot parse \"" +
                         std::string(token) + "\" as a number");
    }
    return v;
}

} // namespace detail

inline std::vector<Matrix> parse_csv_blocks(std::string_view text) {
    std::vector<Matrix> blocks;
    std::vector<std::vector<double>> rows;
    auto flush = [&]() {
        if (rows.empty()) {
            return;
        }
        std::vector<double> flat;
        for (const auto& row : rows) {
            flat.insert(flat.end(), row.begin(), row.end());
        }
        blocks.push_back(Matrix::from_row_major(rows.size(), rows.front().size(), flat));
        rows.clear();
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        const auto line = detail::trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty()) {
            flush();
            continue;
        }
        if (line.front() == '#') {
            continue;
        }
        std::vector<double> row;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            row.push_back(detail::parse_number(
                line.substr(start, comma == std::string_view::npos ? line.npos : comma - start),
                line_no));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("line " + std::to_string(line_no) + ": ragged row (" +
                             std::to_string(row.size()) + " values, expected " +
                             std::to_string(rows.front().size()) + ")");
        }
        rows.push_back(std::move(row));
    }
    flush();
    return blocks;
}

inline Matrix parse_matrix_csv(std::string_view text) {
    auto blocks = parse_csv_blocks(text);
    if (blocks.empty()) {
        throw ParseError("no matrix rows found");
    }
    if (blocks.size() > 1) {
        throw ParseError("expected one matrix, found " + std::to_string(blocks.size()));
    }
    return std::move(blocks.front());
}

inline std::string to_csv(const Matrix& a) {
    std::string out;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j > 0) {
                out += ',';
            }
            out += format_double(a(i, j));
        }
        out += '\n';
    }
    return out;
}

/// JSON if the first non-blank character is '{', CSV otherwise.
inline Matrix parse_matrix(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        return parse_matrix_json(text);
    }
    return parse_matrix_csv(text);
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Matrix read_matrix_file(const std::filesystem::path& path) {
    return parse_matrix(read_text_file(path));
}

// ---------------------------------------------------------------------------
// Homotopy paths and equivariance reports
// ---------------------------------------------------------------------------

inline std::string path_to_csv(const HomotopyPath& path) {
    const std::size_t m = path.source.rows();
    const std::size_t d = path.source.cols();
    std::string out = "t";
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            out += ",entry_" + std::to_string(i) + "_" + std::to_string(j);
        }
    }
    out += ",min_diag,ortho_defect\n";
    for (const auto& s : path.samples) {
        out += format_double(s.t);
        for (double v : s.point.matrix().row_major()) {
            out += ',';
            out += format_double(v);
        }
        out += ',' + format_double(s.min_interpolant_diag);
        out += ',' + format_double(s.ortho_defect) + '\n';
    }
    return out;
}

inline json path_to_json(const HomotopyPath& path) {
    json arr = json::array();
    for (const auto& s : path.samples) {
        arr.push_back({{"t", s.t},
                       {"point", to_json(s.point.matrix())},
                       {"min_diag", s.min_interpolant_diag},
                       {"ortho_defect", s.ortho_defect}});
    }
    return arr;
}

inline json to_json(const EquivarianceReport& r) {
    json defects = json::array();
    for (const auto& [t, d] : r.homotopy_defects) {
        defects.push_back({t, d});
    }
    return json{{"frame_defect", r.frame_defect},
                {"coefficient_defect", r.coefficient_defect},
                {"homotopy_defects", std::move(defects)},
                {"passed", r.passed}};
}

} // namespace stiefel

#endif // STIEFEL_IO_HPP
