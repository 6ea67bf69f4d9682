#include "ostq/records.hpp"

#include <array>
#include <sstream>

namespace ostq {

namespace {

std::array<uint64_t, 256> make_crc_table() {
    /* CRC-64/XZ: reflected, polynomial 0x42F0E1EBA9EA3693 */
    const uint64_t poly = 0xC96C5795D7870F42ull; /* bit-reflected form */
    std::array<uint64_t, 256> t{};
    for (uint32_t i = 0; i < 256; ++i) {
        uint64_t c = i;
        for (int k = 0; k < 8; ++k)
            c = (c & 1) ? (c >> 1) ^ poly : c >> 1;
        t[i] = c;
    }
    return t;
}

}  // namespace

uint64_t crc64(const std::string& data) {
    static const std::array<uint64_t, 256> table = make_crc_table();
    uint64_t crc = ~0ull;
    for (unsigned char ch : data)
        crc = table[(crc ^ ch) & 0xff] ^ (crc >> 8);
    return ~crc;
}

std::string crc64_hex(const std::string& data) {
    static const char* hex = "0123456789ABCDEF";
    uint64_t v = crc64(data);
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = hex[v & 0xf];
        v >>= 4;
    }
    return s;
}

void record_doc::add(const std::string& key, const std::string& value) {
    lines.emplace_back(key, value);
}

void record_doc::add_int(const std::string& key, const bigint& v) {
    lines.emplace_back(key, v.get_str());
}

void record_doc::add_ints(const std::string& key, const std::vector<bigint>& v) {
    lines.emplace_back(key, join_ints(v));
}

std::vector<std::string> record_doc::values(const std::string& key) const {
    std::vector<std::string> out;
    for (auto& [k, v] : lines)
        if (k == key)
            out.push_back(v);
    return out;
}

std::string record_doc::value(const std::string& key) const {
    auto v = values(key);
    if (v.size() != 1)
        throw parse_error("record: expected exactly one '" + key + "', found " +
                          std::to_string(v.size()));
    return v[0];
}

bigint record_doc::value_int(const std::string& key) const { return bigint(value(key)); }

std::vector<bigint> record_doc::value_ints(const std::string& key) const {
    return parse_ints(value(key));
}

bool record_doc::has(const std::string& key) const {
    for (auto& [k, v] : lines)
        if (k == key)
            return true;
    return false;
}

std::string record_doc::emit() const {
    std::ostringstream os;
    os << "%ostq " << doctype << " v1\n";
    for (auto& [k, v] : lines)
        os << k << ": " << v << "\n";
    std::string body = os.str();
    return body + "crc64: " + crc64_hex(body) + "\n";
}

record_doc parse_record(const std::string& text) {
    record_doc doc;
    std::size_t pos = 0;
    bool seen_header = false, seen_crc = false;
    std::size_t crc_line_start = 0;
    std::string crc_claim;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos)
            throw parse_error("record: unterminated line");
        std::string line = text.substr(pos, nl - pos);
        if (!seen_header) {
            if (line.rfind("%ostq ", 0) != 0 || line.size() < 9 ||
                line.substr(line.size() - 3) != " v1")
                throw parse_error("record: bad header line");
            doc.doctype = line.substr(6, line.size() - 9);
            if (doc.doctype.empty())
                throw parse_error("record: empty doctype");
            seen_header = true;
        } else {
            std::size_t sep = line.find(": ");
            if (sep == std::string::npos)
                throw parse_error("record: malformed line '" + line + "'");
            std::string key = line.substr(0, sep);
            std::string val = line.substr(sep + 2);
            if (key == "crc64") {
                crc_claim = val;
                crc_line_start = pos;
                seen_crc = true;
                if (nl + 1 != text.size())
                    throw parse_error("record: trailing data after checksum");
            } else {
                if (seen_crc)
                    throw parse_error("record: data after checksum");
                doc.lines.emplace_back(key, val);
            }
        }
        pos = nl + 1;
    }
    if (!seen_header)
        throw parse_error("record: empty document");
    if (!seen_crc)
        throw parse_error("record: missing checksum");
    std::string body = text.substr(0, crc_line_start);
    if (crc64_hex(body) != crc_claim)
        throw verification_error("record: checksum mismatch");
    return doc;
}

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

std::vector<bigint> parse_ints(const std::string& s) {
    std::vector<bigint> out;
    for (auto& t : split_tokens(s)) {
        try {
            out.emplace_back(t);
        } catch (const std::invalid_argument&) {
            throw parse_error("record: bad integer '" + t + "'");
        }
    }
    return out;
}

std::string join_ints(const std::vector<bigint>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? " " : "") << v[i].get_str();
    return os.str();
}

}  // namespace ostq
