#pragma once

// Run configuration: a single JSON document with exact integer inputs.
// The canonical serialization (sorted keys, no whitespace) is hashed with
// SHA-256; that hash identifies reports, and the window stamp derived from
// (field, family, truncation, box) identifies cached sieve windows.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "bfree/bfamily.hpp"
#include "bfree/box.hpp"
#include "bfree/errors.hpp"
#include "bfree/hash.hpp"
#include "bfree/order.hpp"

namespace bfree {

using Json = nlohmann::json;

class RunConfig {
 public:
  static RunConfig parse_text(const std::string& text) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      fail(errc::config_parse, std::string("invalid JSON: ") + e.what());
    }
    require(j.is_object(), errc::config_parse, "config root must be an object");
    return RunConfig(std::move(j));
  }

  const Json& raw() const { return doc_; }

  std::string canonical() const { return doc_.dump(); }
  std::string hash_hex() const { return sha256_hex(canonical()); }

  bool has(const std::string& key) const { return doc_.contains(key); }

  const Json& section(const std::string& key) const {
    require(doc_.contains(key), errc::config_parse, "config is missing the \"" + key + "\" section");
    return doc_.at(key);
  }

  u64 seed() const { return doc_.value("seed", u64(1)); }
  int threads() const { return doc_.value("threads", 1); }
  u64 point_budget() const { return doc_.value("point_budget", Box::kDefaultPointBudget); }
  Int term_budget() const { return pow2(doc_.value("term_budget_log2", 24u)); }

  OrderHandle build_order() const {
    const Json& f = section("field");
    require(f.is_array() && f.size() >= 2, errc::config_parse,
            "\"field\" must be a coefficient array of degree >= 1, lowest degree first");
    std::vector<i64> coeffs;
    for (const auto& c : f) {
      require(c.is_number_integer(), errc::config_parse, "\"field\" entries must be integers");
      coeffs.push_back(c.get<i64>());
    }
    int cap = doc_.value("degree_cap", FieldOrder::kDefaultDegreeCap);
    return FieldOrder::make(coeffs, cap);
  }

  BFamily build_family(const OrderHandle& order) const {
    const Json& fam = section("family");
    require(fam.is_object(), errc::config_parse, "\"family\" must be an object");
    bool maximal = doc_.value("assert_maximal", false);
    if (fam.contains("prime_power")) {
      const Json& pp = fam.at("prime_power");
      require(pp.contains("k") && pp.contains("norm_bound"), errc::config_parse,
              "\"prime_power\" needs integer fields k and norm_bound");
      return BFamily::prime_power(order, pp.at("k").get<int>(), pp.at("norm_bound").get<i64>(), maximal);
    }
    if (fam.contains("explicit")) {
      const Json& ex = fam.at("explicit");
      require(ex.is_array() && !ex.empty(), errc::config_parse, "\"explicit\" must be a list of ideals");
      std::vector<std::vector<std::vector<i64>>> lists;
      for (const auto& ideal : ex) {
        require(ideal.is_array() && !ideal.empty(), errc::config_parse,
                "each explicit ideal is a list of generator coordinate vectors");
        std::vector<std::vector<i64>> gens;
        for (const auto& gen : ideal) {
          require(gen.is_array(), errc::config_parse, "each generator is a coordinate vector");
          std::vector<i64> v;
          for (const auto& c : gen) v.push_back(c.get<i64>());
          require(static_cast<int>(v.size()) == order->degree(), errc::config_parse,
                  "generator length must equal the field degree");
          gens.push_back(std::move(v));
        }
        lists.push_back(std::move(gens));
      }
      return BFamily::explicit_family(order, lists);
    }
    fail(errc::config_parse, "\"family\" must contain \"prime_power\" or \"explicit\"");
  }

  // Truncation: {"L": n} or {"norm_cutoff": x}; defaults to the full prefix.
  size_t resolve_truncation(const BFamily& family) const {
    if (!doc_.contains("truncation")) return family.size();
    const Json& t = doc_.at("truncation");
    if (t.contains("L")) {
      i64 L = t.at("L").get<i64>();
      require(L >= 0 && static_cast<size_t>(L) <= family.size(), errc::config_parse,
              "truncation L out of range");
      return static_cast<size_t>(L);
    }
    if (t.contains("norm_cutoff")) return family.prefix_by_norm(t.at("norm_cutoff").get<i64>());
    fail(errc::config_parse, "\"truncation\" must contain \"L\" or \"norm_cutoff\"");
  }

  Box parse_box(const Json& j, int dim) const {
    require(j.is_object(), errc::config_parse, "box must be an object");
    if (j.contains("radius")) return Box::folner(dim, j.at("radius").get<i64>());
    if (j.contains("lengths")) {
      std::vector<i64> len = j.at("lengths").get<std::vector<i64>>();
      require(static_cast<int>(len.size()) == dim, errc::config_parse, "box lengths dimension mismatch");
      return Box::from_lengths(len);
    }
    if (j.contains("lo") && j.contains("hi")) {
      std::vector<i64> lo = j.at("lo").get<std::vector<i64>>();
      std::vector<i64> hi = j.at("hi").get<std::vector<i64>>();
      require(static_cast<int>(lo.size()) == dim && static_cast<int>(hi.size()) == dim, errc::config_parse,
              "box lo/hi dimension mismatch");
      return Box(std::move(lo), std::move(hi));
    }
    fail(errc::config_parse, "box needs \"radius\", \"lengths\", or \"lo\"+\"hi\"");
  }

  std::vector<i64> parse_svector(const Json& cmd, size_t L) const {
    if (!cmd.contains("svector")) return svector_ones_vec(L);
    std::vector<i64> s = cmd.at("svector").get<std::vector<i64>>();
    require(s.size() >= L, errc::config_parse, "svector shorter than the truncation");
    return s;
  }

  std::vector<RingElement> parse_offsets(const Json& arr, const OrderHandle& order) const {
    require(arr.is_array(), errc::config_parse, "offset list must be an array of coordinate vectors");
    std::vector<RingElement> out;
    for (const auto& v : arr) {
      std::vector<i64> c = v.get<std::vector<i64>>();
      require(static_cast<int>(c.size()) == order->degree(), errc::config_parse,
              "offset length must equal the field degree");
      out.emplace_back(order, std::move(c));
    }
    return out;
  }

 private:
  static std::vector<i64> svector_ones_vec(size_t L) { return std::vector<i64>(L, 1); }

  explicit RunConfig(Json j) : doc_(std::move(j)) {}
  Json doc_;
};

}  // namespace bfree
