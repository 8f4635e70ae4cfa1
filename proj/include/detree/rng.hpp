#pragma once

#include <cstdint>
#include <string_view>

namespace detree {

// Deterministic 64-bit random stream (splitmix64, Steele et al.).
// All randomness in the toolkit flows through named streams derived from a
// master seed, so runs reproduce bit-for-bit across platforms and worker
// counts. std::uniform_real_distribution is implementation-defined and is
// deliberately avoided.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1): top 53 bits scaled by 2^-53.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), n >= 1. Lemire's multiply-shift map; the
    // O(2^-64) bias is irrelevant here, determinism is what matters.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

// Derives the seed of a named sub-stream from a parent seed. FNV-1a over the
// purpose tag, mixed once through splitmix64 so nearby seeds decorrelate.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view purpose,
                                 std::uint64_t index = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : purpose) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    h ^= seed + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= index * 0xd1342543de82ef95ULL;
    RngStream mixer(h);
    return mixer.next_u64();
}

inline RngStream derive_stream(std::uint64_t seed, std::string_view purpose,
                               std::uint64_t index = 0) {
    return RngStream(derive_seed(seed, purpose, index));
}

}  // namespace detree
