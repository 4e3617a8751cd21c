#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "insolv/decide.hpp"
#include "insolv/pairs.hpp"
#include "insolv/reduction.hpp"
#include "insolv/scan.hpp"
#include "insolv/selfcheck.hpp"

namespace insolv::json_io {

/// Thrown for malformed or out-of-range input documents.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OrderConditions {
  std::vector<std::pair<std::int64_t, std::int64_t>> divisibility;  // (a, m)
  std::optional<std::uint64_t> indivisibility_q;
  std::vector<std::int64_t> indivisibility_bases;
  std::vector<decide::GcdTriple> gcd;
};

struct InputDocument {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  OrderConditions order_conditions;
};

InputDocument parse_input(const std::string& text);

std::string to_json(const pairs::PairClass& pc);
std::string to_json(const reduction::ConditionSet& cs);
std::string to_json(const reduction::IncongruenceSystem& sys);
std::string to_json(const scan::ScanReport& rep);
std::string to_json(const selfcheck::SelfCheckReport& rep);

/// Verdict document; modes_agree is included when the caller evaluated both
/// modes.
std::string to_json(const decide::Verdict& v, std::optional<bool> modes_agree);

}  // namespace insolv::json_io
