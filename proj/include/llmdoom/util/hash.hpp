#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace llmdoom::util {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

// FNV-1a 64; feed several pieces by chaining the returned state.
constexpr std::uint64_t fnv1a64(std::string_view data, std::uint64_t state = kFnvOffset) {
  for (const char c : data) {
    state ^= static_cast<unsigned char>(c);
    state *= 0x100000001b3ULL;
  }
  return state;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
  return out;
}

}  // namespace llmdoom::util
