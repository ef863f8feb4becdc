#include "spinpoint/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace spinpoint::io {

namespace {

[[noreturn]] void bad_matrix(const std::string& why) { throw InvalidArgument("invalid-matrix", why); }

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

double parse_double(std::string_view token) {
    double v = 0.0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc{} || ptr != end) bad_matrix("bad number '" + std::string(token) + "'");
    return v;
}

std::size_t parse_size(std::string_view token) {
    std::size_t v = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc{} || ptr != end) bad_matrix("bad integer '" + std::string(token) + "'");
    return v;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, ptr);
}

nlohmann::json to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        bad_matrix("complex value must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json to_json(std::span<const Complex> v) {
    auto arr = nlohmann::json::array();
    for (const auto& z : v) arr.push_back(to_json(z));
    return arr;
}

nlohmann::json to_json(const CMatrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", to_json(m.data())}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
        bad_matrix("matrix JSON needs rows, cols and data");
    }
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned()) {
        bad_matrix("rows and cols must be positive integers");
    }
    const auto rows = j["rows"].get<std::size_t>();
    const auto cols = j["cols"].get<std::size_t>();
    if (rows == 0 || cols == 0) bad_matrix("rows and cols must be positive integers");
    const auto& data = j["data"];
    if (!data.is_array() || data.size() != rows * cols) {
        bad_matrix("data must hold rows*cols [re, im] pairs");
    }
    std::vector<Complex> values;
    values.reserve(data.size());
    for (const auto& e : data) values.push_back(complex_from_json(e));
    return CMatrix(rows, cols, std::move(values));
}

std::string to_matrix_market(const CMatrix& m) {
    std::string out = "%%MatrixMarket matrix array complex general\n";
    out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (std::size_t c = 0; c < m.cols(); ++c) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            out += format_double(m(r, c).real()) + " " + format_double(m(r, c).imag()) + "\n";
        }
    }
    return out;
}

CMatrix matrix_from_matrix_market(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) bad_matrix("empty Matrix Market input");
    const auto banner = tokens(lower(line));
    if (banner.size() != 5 || banner[0] != "%%matrixmarket" || banner[1] != "matrix") {
        bad_matrix("missing %%MatrixMarket matrix banner");
    }
    const bool coordinate = banner[2] == "coordinate";
    if (!coordinate && banner[2] != "array") bad_matrix("layout must be array or coordinate");
    const bool complex_field = banner[3] == "complex";
    if (!complex_field && banner[3] != "real") bad_matrix("field must be complex or real");
    if (banner[4] != "general") bad_matrix("only general symmetry is supported");

    // Remaining non-comment tokens, in order.
    std::vector<std::string> body;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        for (auto& t : tokens(line)) body.push_back(std::move(t));
    }
    std::size_t pos = 0;
    auto next = [&]() -> std::string_view {
        if (pos >= body.size()) bad_matrix("truncated Matrix Market body");
        return body[pos++];
    };

    const std::size_t rows = parse_size(next());
    const std::size_t cols = parse_size(next());
    if (rows == 0 || cols == 0) bad_matrix("rows and cols must be positive");
    CMatrix m(rows, cols);
    auto read_value = [&]() {
        const double re = parse_double(next());
        const double im = complex_field ? parse_double(next()) : 0.0;
        return Complex(re, im);
    };

    std::vector<Complex> values(rows * cols);
    if (coordinate) {
        const std::size_t nnz = parse_size(next());
        for (std::size_t e = 0; e < nnz; ++e) {
            const std::size_t r = parse_size(next());
            const std::size_t c = parse_size(next());
            if (r < 1 || r > rows || c < 1 || c > cols) bad_matrix("coordinate entry out of range");
            values[(r - 1) * cols + (c - 1)] += read_value();
        }
    } else {
        for (std::size_t c = 0; c < cols; ++c)
            for (std::size_t r = 0; r < rows; ++r) values[r * cols + c] = read_value();
    }
    if (pos != body.size()) bad_matrix("trailing data after Matrix Market body");
    return CMatrix(rows, cols, std::move(values));
}

std::string to_pretty(const CMatrix& m) {
    auto format_entry = [](Complex z) {
        std::ostringstream s;
        s.precision(6);
        const double re = z.real() == 0.0 ? 0.0 : z.real();
        const double im = z.imag() == 0.0 ? 0.0 : z.imag();
        if (im == 0.0) {
            s << re;
        } else if (re == 0.0) {
            s << im << "i";
        } else {
            s << re << (im < 0 ? "-" : "+") << std::abs(im) << "i";
        }
        return s.str();
    };
    std::vector<std::string> cells;
    std::size_t width = 0;
    for (const auto& z : m.data()) {
        cells.push_back(format_entry(z));
        width = std::max(width, cells.back().size());
    }
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += "[";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const auto& cell = cells[r * m.cols() + c];
            out += std::string(width - cell.size() + 1, ' ') + cell;
        }
        out += " ]\n";
    }
    return out;
}

CMatrix parse_matrix(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) bad_matrix("empty matrix input");
    if (text.substr(first, 2) == "%%") return matrix_from_matrix_market(text.substr(first));
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        bad_matrix(std::string("JSON parse error: ") + e.what());
    }
    return matrix_from_json(j);
}

CMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("unreadable-file", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

}  // namespace spinpoint::io
