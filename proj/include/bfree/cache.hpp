#pragma once

// Window cache file format (stable across versions):
//
//   offset  size  field
//   0       8     magic "BFWCACH1"
//   8       4     format version, u32 little-endian (currently 1)
//   12      4     reserved, zero
//   16      32    generator stamp: SHA-256 over the canonical description of
//                 (order polynomial, family ideal bases, truncation L, box)
//   48      4     box dimension d, u32 LE
//   52      16d   per axis: lo then hi, i64 LE
//   ...     8     bit count, u64 LE
//   ...     8     truncation L, u64 LE
//   ...     n     raw bit array, little-endian: point k is bit (k mod 8) of
//                 byte floor(k/8), padded with zero bits to a whole byte
//
// Loading verifies magic, version, stamp and box; any mismatch is rejected.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bfree/bfamily.hpp"
#include "bfree/box.hpp"
#include "bfree/sieve.hpp"
#include "bfree/window.hpp"

namespace bfree {

namespace detail {

inline void put_u32(std::string& s, u64 v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
inline void put_u64(std::string& s, u64 v) {
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
inline void put_i64(std::string& s, i64 v) { put_u64(s, static_cast<u64>(v)); }

inline u64 get_u(const std::string& s, size_t off, int bytes) {
  u64 v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<u64>(static_cast<unsigned char>(s[off + static_cast<size_t>(i)])) << (8 * i);
  return v;
}

}  // namespace detail

inline constexpr char kCacheMagic[9] = "BFWCACH1";

inline std::string serialize_window_cache(const Window& w) {
  require(w.stamp().has_value(), errc::invalid_argument, "only stamped windows can be cached");
  std::string out(kCacheMagic, 8);
  detail::put_u32(out, 1);
  detail::put_u32(out, 0);
  for (char c : w.stamp()->hash_hex) out.push_back(c);  // 64 hex chars
  detail::put_u32(out, static_cast<u64>(w.box().dim()));
  for (int t = 0; t < w.box().dim(); ++t) {
    detail::put_i64(out, w.box().lo(t));
    detail::put_i64(out, w.box().hi(t));
  }
  detail::put_u64(out, w.size());
  detail::put_u64(out, w.stamp()->truncation);
  for (u64 byte = 0; byte < (w.size() + 7) / 8; ++byte) {
    unsigned char b = 0;
    for (int k = 0; k < 8; ++k) {
      u64 i = byte * 8 + static_cast<u64>(k);
      if (i < w.size() && w.bit(i)) b |= static_cast<unsigned char>(1u << k);
    }
    out.push_back(static_cast<char>(b));
  }
  return out;
}

// Parse and verify a cache blob against the expected stamp.
inline Window parse_window_cache(const std::string& blob, const std::string& expect_stamp_hex) {
  require(blob.size() >= 16 + 64 + 4, errc::cache_mismatch, "cache file truncated");
  require(blob.compare(0, 8, kCacheMagic, 8) == 0, errc::cache_mismatch, "bad cache magic");
  require(detail::get_u(blob, 8, 4) == 1, errc::cache_mismatch, "unsupported cache version");
  std::string stamp = blob.substr(16, 64);
  require(stamp == expect_stamp_hex, errc::cache_mismatch,
          "cache stamp does not match the active configuration");
  size_t off = 80;
  int d = static_cast<int>(detail::get_u(blob, off, 4));
  off += 4;
  require(d >= 1 && d <= 16, errc::cache_mismatch, "bad cache dimension");
  std::vector<i64> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
  for (int t = 0; t < d; ++t) {
    lo[static_cast<size_t>(t)] = static_cast<i64>(detail::get_u(blob, off, 8));
    off += 8;
    hi[static_cast<size_t>(t)] = static_cast<i64>(detail::get_u(blob, off, 8));
    off += 8;
  }
  u64 bit_count = detail::get_u(blob, off, 8);
  off += 8;
  u64 L = detail::get_u(blob, off, 8);
  off += 8;
  require(blob.size() == off + (bit_count + 7) / 8, errc::cache_mismatch, "cache payload size mismatch");
  Box box(lo, hi);
  require(box.point_count() == bit_count, errc::cache_mismatch, "cache bit count mismatch");
  std::vector<u64> words((bit_count + 63) / 64, 0);
  for (u64 byte = 0; byte < (bit_count + 7) / 8; ++byte) {
    u64 b = static_cast<u64>(static_cast<unsigned char>(blob[off + byte]));
    words[byte / 8] |= b << (8 * (byte % 8));
  }
  Window w(box, std::move(words), bit_count);
  w.set_stamp({stamp, L});
  return w;
}

// Atomic write: temp file in the target directory, then rename.
inline void write_file_atomic(const std::string& path, const std::string& data) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    require(os.good(), errc::invalid_argument, "cannot open temp file " + tmp.string());
    os.write(data.data(), static_cast<std::streamsize>(data.size()));
    require(os.good(), errc::invalid_argument, "write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(is.good(), errc::invalid_argument, "cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace bfree
