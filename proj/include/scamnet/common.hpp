#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace scamnet {

// Exit-code categories for the CLI: usage/config = 1, data = 2, numeric = 3.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Wei amounts are exact 128-bit unsigned integers until feature time.
using Wei = unsigned __int128;

// Parses a decimal string into Wei. Throws DataError on non-digits,
// empty input, or values >= 2^128.
Wei parse_wei(std::string_view s);

std::string wei_to_string(Wei v);

// True iff a is "0x" followed by exactly 40 hex digits (any case).
bool is_valid_address(std::string_view a);

// Lowercases an address in place-copy form.
std::string normalize_address(std::string_view a);

// FNV-1a 64-bit, used for artifact/content hashes in manifests.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

inline constexpr const char* kFeatureOrderVersion = "topo13-v1";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace scamnet
