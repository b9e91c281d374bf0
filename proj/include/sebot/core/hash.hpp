#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sebot {

/// 64-bit FNV-1a; used for dataset/config fingerprints and cache keys.
class Fnv1a {
public:
    void update(std::string_view bytes);
    void update_u64(std::uint64_t v);
    void update_double(double v);
    std::uint64_t digest() const noexcept { return state_; }
    std::string hex() const;

private:
    std::uint64_t state_ = 14695981039346656037ULL;
};

std::string to_hex(std::uint64_t v);

}  // namespace sebot
