#include "scamnet/common.hpp"

#include <algorithm>
#include <cctype>

namespace scamnet {

Wei parse_wei(std::string_view s) {
    if (s.empty()) throw DataError("empty Wei value");
    Wei v = 0;
    const Wei max = ~Wei(0);
    for (char c : s) {
        if (c < '0' || c > '9') throw DataError("non-decimal Wei value '" + std::string(s) + "'");
        unsigned d = static_cast<unsigned>(c - '0');
        if (v > max / 10 || (v == max / 10 && d > static_cast<unsigned>(max % 10)))
            throw DataError("Wei value overflows 128 bits: '" + std::string(s) + "'");
        v = v * 10 + d;
    }
    return v;
}

std::string wei_to_string(Wei v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

bool is_valid_address(std::string_view a) {
    if (a.size() != 42) return false;
    if (a[0] != '0' || (a[1] != 'x' && a[1] != 'X')) return false;
    for (size_t i = 2; i < 42; ++i) {
        if (!std::isxdigit(static_cast<unsigned char>(a[i]))) return false;
    }
    return true;
}

std::string normalize_address(std::string_view a) {
    std::string out(a);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view data) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace scamnet
