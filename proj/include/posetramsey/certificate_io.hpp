#pragma once

// Canonical certificate serialization.
//
// Keys appear in a fixed order, numbers use 17 significant digits, lines
// carry no trailing whitespace and the document ends with a newline. The
// SHA-256 of that byte string is the certificate's identity.

#include "posetramsey/certifier.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

namespace posetramsey {

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string format_number(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("certificate: non-finite number");
    if (v == 0.0) return "0";
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

inline std::string format_array(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_number(values[i]);
    }
    out += "]";
    return out;
}

inline std::vector<double> read_array(const nlohmann::json& j, const char* key, std::size_t expected) {
    if (!j.contains(key) || !j.at(key).is_array()) throw SchemaError(std::string("missing array '") + key + "'");
    const auto& arr = j.at(key);
    if (arr.size() != expected) {
        throw SchemaError(std::string("array '") + key + "' has " + std::to_string(arr.size()) + " entries, expected " +
                          std::to_string(expected));
    }
    std::vector<double> out;
    out.reserve(expected);
    for (const auto& v : arr) {
        if (!v.is_number()) throw SchemaError(std::string("non-numeric entry in '") + key + "'");
        out.push_back(v.get<double>());
    }
    return out;
}

inline const nlohmann::json& require(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
    return j.at(key);
}

inline double read_number(const nlohmann::json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number()) throw SchemaError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

} // namespace detail

inline std::string to_canonical_json(const Certificate& cert) {
    using detail::format_array;
    using detail::format_number;
    const auto& m = cert.margins;
    std::string out;
    out += "{\n";
    out += "  \"schema_version\": " + std::to_string(cert.schema_version) + ",\n";
    out += "  \"L\": " + std::to_string(cert.L) + ",\n";
    out += "  \"epsilon\": " + format_number(cert.epsilon) + ",\n";
    out += "  \"params\": {\n";
    out += "    \"c\": " + format_array(cert.params.c) + ",\n";
    out += "    \"h\": " + format_array(cert.params.h) + "\n";
    out += "  },\n";
    out += "  \"c_total\": " + format_number(cert.c_total) + ",\n";
    out += "  \"margins\": {\n";
    out += "    \"intersection\": " + format_array(m.intersection) + ",\n";
    out += "    \"probability\": " + format_array(m.probability) + ",\n";
    out += "    \"room_for_h\": " + format_array(m.room_for_h) + ",\n";
    out += "    \"t_below_top\": " + format_array(m.t_below_top) + ",\n";
    out += "    \"subfamily\": " + format_array(m.subfamily) + "\n";
    out += "  },\n";
    out += "  \"derived\": {\n";
    out += "    \"N\": " + format_number(cert.derived.N) + ",\n";
    out += "    \"s\": " + format_array(cert.derived.s) + ",\n";
    out += "    \"t\": " + format_array(cert.derived.t) + ",\n";
    out += "    \"top\": " + format_array(cert.derived.top) + "\n";
    out += "  },\n";
    out += std::string("  \"verified\": ") + (cert.verified ? "true" : "false") + ",\n";
    out += "  \"rationalized_denominator\": " +
           (cert.rationalized_denominator ? std::to_string(*cert.rationalized_denominator) : std::string("null")) +
           "\n";
    out += "}\n";
    return out;
}

/// Reads a certificate as stored. Nothing is recomputed here; pass the
/// params to certify() to re-verify.
inline Certificate parse_certificate(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("certificate must be a JSON object");

    Certificate cert;
    const auto& version = detail::require(j, "schema_version");
    if (!version.is_number_integer() || version.get<int>() != kCertificateSchemaVersion) {
        throw SchemaError("unsupported schema_version (expected " + std::to_string(kCertificateSchemaVersion) + ")");
    }
    cert.schema_version = version.get<int>();
    const auto& L = detail::require(j, "L");
    if (!L.is_number_unsigned() || L.get<std::size_t>() < 1) throw SchemaError("'L' must be a positive integer");
    cert.L = L.get<std::size_t>();
    cert.epsilon = detail::read_number(j, "epsilon");

    const auto& params = detail::require(j, "params");
    cert.params.c = detail::read_array(params, "c", cert.L);
    cert.params.h = detail::read_array(params, "h", cert.L);
    cert.c_total = detail::read_number(j, "c_total");

    const auto& margins = detail::require(j, "margins");
    cert.margins.intersection = detail::read_array(margins, "intersection", cert.L);
    cert.margins.probability = detail::read_array(margins, "probability", cert.L);
    cert.margins.room_for_h = detail::read_array(margins, "room_for_h", cert.L);
    cert.margins.t_below_top = detail::read_array(margins, "t_below_top", cert.L);
    cert.margins.subfamily = detail::read_array(margins, "subfamily", cert.L);

    const auto& derived = detail::require(j, "derived");
    cert.derived.N = detail::read_number(derived, "N");
    cert.derived.s = detail::read_array(derived, "s", cert.L);
    cert.derived.t = detail::read_array(derived, "t", cert.L);
    cert.derived.top = detail::read_array(derived, "top", cert.L);

    const auto& verified = detail::require(j, "verified");
    if (!verified.is_boolean()) throw SchemaError("'verified' must be a boolean");
    cert.verified = verified.get<bool>();

    const auto& den = detail::require(j, "rationalized_denominator");
    if (den.is_null()) {
        cert.rationalized_denominator.reset();
    } else if (den.is_number_integer() && den.get<std::int64_t>() >= 1) {
        cert.rationalized_denominator = den.get<std::int64_t>();
    } else {
        throw SchemaError("'rationalized_denominator' must be null or a positive integer");
    }
    return cert;
}

/// Lowercase hex SHA-256 of the canonical serialization.
inline std::string certificate_digest(const Certificate& cert) {
    const std::string text = to_canonical_json(cert);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

/// Writes to a sibling temporary file and renames it over `path`.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace posetramsey
