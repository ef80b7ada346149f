// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace geoverify {

inline constexpr std::uint64_t fnv1a64(std::string_view text, std::uint64_t seed = 0xcbf29ce484222325ULL) {
    std::uint64_t h = seed;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Keyed hash of a sequence of fields; field boundaries are part of the key.
inline std::uint64_t keyed_hash(std::uint64_t key, std::initializer_list<std::string_view> fields) {
    std::uint64_t h = splitmix64(key);
    for (auto field : fields) {
        h = splitmix64(h ^ fnv1a64(field));
        h = splitmix64(h ^ field.size());
    }
    return h;
}

} // namespace geoverify
