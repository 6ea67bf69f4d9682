#ifndef OSTQ_RECORDS_HPP
#define OSTQ_RECORDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ostq/arith.hpp"

namespace ostq {

/* CRC-64/XZ. Integrity only, not cryptographic; every single-bit
 * corruption is detected. */
uint64_t crc64(const std::string& data);
std::string crc64_hex(const std::string& data);

/* Canonical line-oriented document:
 *
 *   %ostq <doctype> v1
 *   key: value tokens
 *   ...
 *   crc64: 0123456789ABCDEF
 *
 * Keys may repeat; order is fixed by the writer and preserved verbatim by
 * the parser, so emit(parse(text)) == text.  The checksum covers every
 * byte from the header line up to and including the newline before the
 * crc64 line. */
struct record_doc {
    std::string doctype;
    std::vector<std::pair<std::string, std::string>> lines;

    void add(const std::string& key, const std::string& value);
    void add_int(const std::string& key, const bigint& v);
    void add_ints(const std::string& key, const std::vector<bigint>& v);

    /* All values for `key`, in order. */
    std::vector<std::string> values(const std::string& key) const;
    /* Exactly-one accessors; throw parse_error when absent/duplicated. */
    std::string value(const std::string& key) const;
    bigint value_int(const std::string& key) const;
    std::vector<bigint> value_ints(const std::string& key) const;
    bool has(const std::string& key) const;

    std::string emit() const; /* appends the crc64 line */
};

record_doc parse_record(const std::string& text);

/* Whitespace-token helpers used by the schema readers. */
std::vector<std::string> split_tokens(const std::string& s);
std::vector<bigint> parse_ints(const std::string& s);
std::string join_ints(const std::vector<bigint>& v);

}  // namespace ostq

#endif
