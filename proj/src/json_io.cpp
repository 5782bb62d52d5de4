#include "afflab/json_io.hpp"

#include <limits>

namespace afflab {

namespace {

int get_int(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer())
        throw DomainError(std::string("expected integer field \"") + key + "\"");
    return j[key].get<int>();
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw DomainError(std::string("bad hex digit '") + c + "'");
}

}  // namespace

std::string bits_hex(const PointSet& s) {
    // Most significant nibble first, so the string reads as one big number.
    const std::size_t nibbles = std::max<std::size_t>(1, (s.universe() + 3) / 4);
    std::string out(nibbles, '0');
    s.for_each([&](Index x) {
        char& c = out[nibbles - 1 - x / 4];
        c = "0123456789abcdef"[hex_value(c) | (1 << (x % 4))];
    });
    return out;
}

Json to_json(const PointSet& s, bool compact) {
    Json j;
    j["q"] = s.q();
    j["n"] = s.dim();
    if (compact) {
        j["bits_hex"] = bits_hex(s);
    } else {
        j["points"] = Json::array();
        s.for_each([&](Index x) { j["points"].push_back(x); });
    }
    return j;
}

PointSet point_set_from_json(const Json& j) {
    const int q = get_int(j, "q");
    const int n = get_int(j, "n");
    PointSet s(q, n);
    if (j.contains("points")) {
        if (!j["points"].is_array()) throw DomainError("\"points\" must be an array");
        for (const auto& p : j["points"]) {
            if (!p.is_number_unsigned() && !(p.is_number_integer() && p.get<long long>() >= 0))
                throw DomainError("point indices must be nonnegative integers");
            const Index x = p.get<Index>();
            if (x >= s.universe()) throw DomainError("point index " + std::to_string(x) + " outside F_q^n");
            s.insert(x);
        }
    } else if (j.contains("bits_hex")) {
        const std::string hex = j["bits_hex"].get<std::string>();
        for (std::size_t i = 0; i < hex.size(); ++i) {
            const int v = hex_value(hex[hex.size() - 1 - i]);
            for (int b = 0; b < 4; ++b) {
                if (!((v >> b) & 1)) continue;
                const Index x = 4 * i + b;
                if (x >= s.universe()) throw DomainError("bits_hex sets a bit outside F_q^n");
                s.insert(x);
            }
        }
    } else {
        throw DomainError("point set needs \"points\" or \"bits_hex\"");
    }
    return s;
}

Json to_json(const AffineConfiguration& b) {
    Json j;
    j["q"] = b.q();
    j["m"] = b.dim();
    j["points"] = Json::array();
    for (const auto& p : b.points()) {
        Json row = Json::array();
        for (auto d : p) row.push_back(static_cast<int>(d));
        j["points"].push_back(row);
    }
    return j;
}

AffineConfiguration config_from_json(const Json& j) {
    const int q = get_int(j, "q");
    const int m = get_int(j, "m");
    if (!j.contains("points") || !j["points"].is_array()) throw DomainError("configuration needs \"points\"");
    std::vector<DigitVector> pts;
    for (const auto& row : j["points"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != m)
            throw DomainError("each configuration point needs " + std::to_string(m) + " digits");
        DigitVector v;
        for (const auto& d : row) {
            const int x = d.get<int>();
            if (x < 0 || x >= q) throw DomainError("digit out of range");
            v.push_back(static_cast<typename DigitVector::value_type>(x));
        }
        pts.push_back(std::move(v));
    }
    return AffineConfiguration(q, m, std::move(pts));
}

Json big_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

BigInt big_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw DomainError("expected an integer");
}

}  // namespace afflab
