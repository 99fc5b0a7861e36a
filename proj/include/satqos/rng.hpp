#pragma once

// Deterministic, platform-independent random streams.
//
// Every random decision in a run is a pure function of integer keys, so
// results never depend on scheduling order, thread count or the C++
// standard library's distribution internals. The core mixer is the
// SplitMix64 finalizer (public domain, full 64-bit avalanche).

#include <bit>
#include <cstdint>
#include <string_view>

namespace satqos {

constexpr std::uint64_t kGolden64 = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h + kGolden64 + v);
}

// FNV-1a over raw bytes.
constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

constexpr std::uint64_t fnv1a_byte(std::uint64_t h, unsigned char b) {
    return (h ^ b) * kFnvPrime;
}

constexpr std::uint64_t fnv1a(std::uint64_t h, std::string_view s) {
    for (char c : s) h = fnv1a_byte(h, static_cast<unsigned char>(c));
    return h;
}

constexpr std::uint64_t fnv1a_u64le(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) h = fnv1a_byte(h, static_cast<unsigned char>((v >> (8 * i)) & 0xff));
    return h;
}

// Map a 64-bit word to [0, 1) using the top 53 bits.
constexpr double uniform01(std::uint64_t word) {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

// Key for a flow's loss stream; 0x1f separates the ids so distinct
// (src, dst) pairs can never collide by concatenation.
constexpr std::uint64_t flow_stream_key(std::string_view src, std::string_view dst) {
    std::uint64_t h = fnv1a(kFnvOffset, src);
    h = fnv1a_byte(h, 0x1f);
    return fnv1a(h, dst);
}

// Per-packet uniform draw, keyed by (run seed, flow, sequence number).
constexpr double packet_uniform(std::uint64_t run_seed, std::uint64_t flow_key, std::uint64_t seq) {
    return uniform01(hash_combine(hash_combine(run_seed, flow_key), seq));
}

// Per-run seed: FNV-1a over seed (8 bytes LE), src, 0x1f, dst, 0x1f and
// the IEEE-754 bit pattern of the bandwidth. Stable across platforms,
// independent of the position of the run in the expansion.
inline std::uint64_t derive_run_seed(std::uint64_t plan_seed, std::string_view src,
                                     std::string_view dst, double bandwidth_hz) {
    std::uint64_t h = fnv1a_u64le(kFnvOffset, plan_seed);
    h = fnv1a(h, src);
    h = fnv1a_byte(h, 0x1f);
    h = fnv1a(h, dst);
    h = fnv1a_byte(h, 0x1f);
    h = fnv1a_u64le(h, std::bit_cast<std::uint64_t>(bandwidth_hz));
    return h;
}

}  // namespace satqos
