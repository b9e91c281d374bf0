#include "sebot/core/hash.hpp"

#include <cstdio>
#include <cstring>

namespace sebot {

void Fnv1a::update(std::string_view bytes) {
    for (unsigned char c : bytes) {
        state_ ^= c;
        state_ *= 1099511628211ULL;
    }
}

void Fnv1a::update_u64(std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    update(std::string_view(buf, 8));
}

void Fnv1a::update_double(double v) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    update_u64(bits);
}

std::string Fnv1a::hex() const { return to_hex(state_); }

std::string to_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace sebot
