#ifndef ITERSTBC_VERSION_HPP
#define ITERSTBC_VERSION_HPP

#include <cstdint>
#include <cstdio>
#include <string>

namespace iterstbc {

inline constexpr const char* kVersion = "0.1.0";

// FNV-1a 64 over the canonical input text; embedded in every output so a
// run can be traced back to its exact configuration.
inline std::string input_digest(const std::string& text) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace iterstbc

#endif
