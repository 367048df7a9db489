#pragma once

#include <openssl/evp.h>

#include <array>
#include <string>

#include "bfree/errors.hpp"

namespace bfree {

inline std::array<unsigned char, 32> sha256_bytes(const std::string& data) {
  std::array<unsigned char, 32> md{};
  unsigned int len = 0;
  int rc = EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr);
  require(rc == 1 && len == 32, errc::invalid_argument, "sha256 failed");
  return md;
}

inline std::string sha256_hex(const std::string& data) {
  static const char* hexdig = "0123456789abcdef";
  auto md = sha256_bytes(data);
  std::string out;
  out.reserve(64);
  for (unsigned char b : md) {
    out.push_back(hexdig[b >> 4]);
    out.push_back(hexdig[b & 15]);
  }
  return out;
}

}  // namespace bfree
