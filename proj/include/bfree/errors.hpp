#pragma once

#include <stdexcept>
#include <string>

namespace bfree {

enum class errc {
  not_monic,
  reducible,
  degree_too_large,
  overflow,
  zero_element,
  not_coprime,
  not_prime,
  unsafe_prime,
  empty_family,
  size_overflow,
  budget_exceeded,
  empty_interior,
  not_disjoint,
  inconclusive,
  config_parse,
  cache_mismatch,
  invalid_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_monic: return "NotMonic";
    case errc::reducible: return "Reducible";
    case errc::degree_too_large: return "DegreeTooLarge";
    case errc::overflow: return "Overflow";
    case errc::zero_element: return "ZeroElement";
    case errc::not_coprime: return "NotCoprime";
    case errc::not_prime: return "NotPrime";
    case errc::unsafe_prime: return "UnsafePrime";
    case errc::empty_family: return "EmptyFamily";
    case errc::size_overflow: return "SizeOverflow";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::empty_interior: return "EmptyInterior";
    case errc::not_disjoint: return "NotDisjoint";
    case errc::inconclusive: return "Inconclusive";
    case errc::config_parse: return "ConfigParse";
    case errc::cache_mismatch: return "CacheMismatch";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace bfree
