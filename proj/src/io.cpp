#include "torext/io.hpp"

#include <cctype>
#include <cstdint>
#include <limits>
#include <sstream>

namespace torext {

namespace {

bool fits_int64(const Int& v) {
    static const Int lo = Int(std::numeric_limits<std::int64_t>::min());
    static const Int hi = Int(std::numeric_limits<std::int64_t>::max());
    return v >= lo && v <= hi;
}

Int int_from_string(const std::string& s) {
    if (s.empty()) throw parse_error("empty integer literal");
    std::size_t k = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (k == s.size()) throw parse_error("malformed integer literal: " + s);
    for (; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            throw parse_error("malformed integer literal: " + s);
    return Int(s);
}

IntMatrix matrix_from_text(const std::string& input) {
    std::istringstream is(input);
    long long p = 0;
    if (!(is >> p) || p < 1)
        throw parse_error("matrix text: expected a positive dimension on the first line");
    if (p > 4096) throw parse_error("matrix text: dimension too large");
    IntMatrix a(p, p);
    for (long long i = 0; i < p; ++i)
        for (long long j = 0; j < p; ++j) {
            std::string tok;
            if (!(is >> tok))
                throw parse_error("matrix text: expected " + std::to_string(p * p) +
                                  " entries after the dimension");
            a(i, j) = int_from_string(tok);
        }
    std::string rest;
    if (is >> rest) throw parse_error("matrix text: trailing content after the last entry");
    return a;
}

}  // namespace

nlohmann::json int_to_json(const Int& v) {
    if (fits_int64(v)) return nlohmann::json(static_cast<std::int64_t>(v.get_si()));
    return nlohmann::json(v.get_str());
}

Int int_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) {
            std::uint64_t u = j.get<std::uint64_t>();
            std::ostringstream os;
            os << u;
            return Int(os.str());
        }
        return Int(static_cast<long>(j.get<std::int64_t>()));
    }
    if (j.is_string()) return int_from_string(j.get<std::string>());
    throw parse_error("matrix JSON: entries must be integers or decimal strings");
}

IntMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("rows"))
        throw parse_error("matrix JSON: expected an object with \"p\" and \"rows\"");
    if (!j["p"].is_number_integer())
        throw parse_error("matrix JSON: \"p\" must be an integer");
    const long long p = j["p"].get<long long>();
    if (p < 1 || p > 4096) throw parse_error("matrix JSON: dimension out of range");
    const auto& rows = j["rows"];
    if (!rows.is_array() || static_cast<long long>(rows.size()) != p)
        throw parse_error("matrix JSON: \"rows\" must hold exactly p rows");
    IntMatrix a(p, p);
    for (long long i = 0; i < p; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || static_cast<long long>(row.size()) != p)
            throw parse_error("matrix JSON: each row must hold exactly p entries");
        for (long long k = 0; k < p; ++k) a(i, k) = int_from_json(row[k]);
    }
    return a;
}

IntMatrix parse_matrix(const std::string& input) {
    std::size_t k = 0;
    while (k < input.size() && std::isspace(static_cast<unsigned char>(input[k]))) ++k;
    if (k == input.size()) throw parse_error("empty matrix input");
    if (input[k] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(input);
        } catch (const nlohmann::json::parse_error& e) {
            throw parse_error(std::string("matrix JSON: ") + e.what());
        }
        return matrix_from_json(j);
    }
    return matrix_from_text(input);
}

std::string matrix_to_text(const IntMatrix& a) {
    std::ostringstream os;
    os << a.rows() << "\n";
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (j) os << ' ';
            os << a(i, j).get_str();
        }
        os << "\n";
    }
    return os.str();
}

nlohmann::json matrix_to_json(const IntMatrix& a) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(int_to_json(a(i, j)));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"p", a.rows()}, {"rows", std::move(rows)}};
}

}  // namespace torext
