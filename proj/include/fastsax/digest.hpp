#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace fastsax {

/// CRC-64/XZ. Detects any single-byte corruption and all burst errors
/// shorter than 64 bits.
class Crc64 {
public:
    void update(const void* data, std::size_t size) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        const std::array<std::uint64_t, 256>& t = table();
        for (std::size_t i = 0; i < size; ++i) {
            state_ = t[(state_ ^ bytes[i]) & 0xFF] ^ (state_ >> 8);
        }
    }

    void update(std::string_view s) { update(s.data(), s.size()); }

    void update_u64(std::uint64_t v) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        update(b, 8);
    }

    void update_double(double v) { update_u64(std::bit_cast<std::uint64_t>(v)); }

    std::uint64_t value() const { return ~state_; }

    static std::uint64_t of(std::string_view s) {
        Crc64 c;
        c.update(s);
        return c.value();
    }

private:
    static const std::array<std::uint64_t, 256>& table() {
        static const std::array<std::uint64_t, 256> t = [] {
            constexpr std::uint64_t poly = 0xC96C5795D7870F42ull;
            std::array<std::uint64_t, 256> out{};
            for (std::uint64_t i = 0; i < 256; ++i) {
                std::uint64_t crc = i;
                for (int k = 0; k < 8; ++k) {
                    crc = (crc & 1) ? (crc >> 1) ^ poly : crc >> 1;
                }
                out[i] = crc;
            }
            return out;
        }();
        return t;
    }

    std::uint64_t state_ = ~0ull;
};

inline std::string to_hex16(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

}  // namespace fastsax
