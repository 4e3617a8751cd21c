#include "insolv/json_io.hpp"

#include <json.hpp>

namespace insolv::json_io {

namespace {

using nlohmann::ordered_json;

std::int64_t as_int(const ordered_json& j, const char* what) {
  if (!j.is_number_integer())
    throw InputError(std::string("input: expected an integer for ") + what);
  std::int64_t v = j.get<std::int64_t>();
  if (v > arith::kMagnitudeCap || v < -arith::kMagnitudeCap)
    throw InputError(std::string("input: |value| exceeds 2^62 in ") + what);
  return v;
}

const char* variant_name(pairs::Variant v) {
  switch (v) {
    case pairs::Variant::Trivial: return "trivial";
    case pairs::Variant::Irrational: return "irrational";
    case pairs::Variant::Odd: return "odd";
    case pairs::Variant::Divisible: return "divisible";
    case pairs::Variant::Even: return "even";
    case pairs::Variant::StronglyEven: return "strongly_even";
  }
  return "?";
}

ordered_json pair_class_doc(const pairs::PairClass& pc) {
  ordered_json j;
  j["variant"] = variant_name(pc.variant);
  if (pc.trivial_kind)
    j["subcase"] = *pc.trivial_kind == pairs::TrivialKind::AlwaysSolvable
                       ? "always_solvable"
                       : "eventually_insolvable";
  if (pc.power_k) j["k"] = *pc.power_k;
  if (pc.core) j["core"] = *pc.core;
  if (pc.r) j["r"] = *pc.r;
  if (pc.s) j["s"] = *pc.s;
  if (pc.q) j["q"] = *pc.q;
  j["pair"] = {pc.a, pc.b};
  return j;
}

std::vector<std::int64_t> values_of(const std::vector<multgroup::SignedFactored>& xs) {
  std::vector<std::int64_t> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.value.value());
  return out;
}

ordered_json condition_set_doc(const reduction::ConditionSet& cs) {
  ordered_json j;
  j["odd_list"] = values_of(cs.odd_list);
  j["even_list"] = values_of(cs.even_list);
  ordered_json divisible = ordered_json::array();
  for (const auto& [c, q] : cs.divisible_list) divisible.push_back({c, q});
  j["divisible_list"] = divisible;
  ordered_json irrational = ordered_json::array();
  for (const auto& [a, b] : cs.irrational_list) irrational.push_back({a, b});
  j["irrational_list"] = irrational;
  j["bad_primes"] = cs.bad_primes;
  if (cs.early_verdict) {
    j["early_verdict"] = *cs.early_verdict == reduction::EarlyVerdict::Never
                             ? "never"
                             : "minus_one_product";
    if (!cs.minus_one_exponents.empty())
      j["minus_one_exponents"] = cs.minus_one_exponents;
  }
  j["odd_original"] = values_of(cs.odd_original);
  ordered_json certs = ordered_json::array();
  for (const auto& c : cs.odd_certificates) {
    ordered_json cert;
    cert["x"] = c.x;
    cert["exponents"] = c.exponents;
    certs.push_back(std::move(cert));
  }
  j["odd_certificates"] = certs;
  ordered_json dropped = ordered_json::array();
  for (const auto& [a, b] : cs.dropped_trivial) dropped.push_back({a, b});
  j["dropped_trivial"] = dropped;
  return j;
}

ordered_json system_doc(const reduction::IncongruenceSystem& sys) {
  ordered_json j;
  j["modulus_log2"] = sys.modulus_log2;
  j["mode"] = sys.mode == reduction::Mode::Literal ? "literal" : "sign_extended";
  j["num_vars"] = sys.num_vars;
  ordered_json rows = ordered_json::array();
  for (const auto& r : sys.rows) {
    ordered_json row;
    row["coeffs"] = r.coeffs;
    row["offset"] = r.offset;
    row["source"] = r.source;
    rows.push_back(std::move(row));
  }
  j["rows"] = rows;
  j["B_members"] = sys.b_members;
  return j;
}

ordered_json scan_report_doc(const scan::ScanReport& rep) {
  ordered_json j;
  j["range"] = {rep.lo, rep.hi};
  j["primes_scanned"] = rep.primes_scanned;
  j["bad_primes_skipped"] = rep.bad_primes_skipped;
  j["matching_count"] = rep.matching_count;
  j["condition_match_count"] = rep.condition_match_count;
  j["first_matches"] = rep.first_matches;
  j["density_estimate"] = rep.density_estimate;
  ordered_json tallies = ordered_json::array();
  for (const auto& t : rep.per_condition) {
    ordered_json entry;
    entry["kind"] = t.kind;
    if (t.kind == "divisible") {
      entry["core"] = t.params.at(0);
      entry["q"] = t.params.at(1);
    } else if (t.kind == "irrational") {
      entry["a"] = t.params.at(0);
      entry["b"] = t.params.at(1);
    } else {
      entry["value"] = t.params.at(0);
    }
    entry["count"] = t.count;
    tallies.push_back(std::move(entry));
  }
  j["per_condition"] = tallies;
  ordered_json disc = ordered_json::array();
  for (const auto& d : rep.discrepancies) {
    ordered_json entry;
    entry["p"] = d.p;
    entry["description"] = d.description;
    disc.push_back(std::move(entry));
  }
  j["discrepancies"] = disc;
  return j;
}

bool sign_sensitive(const reduction::ConditionSet& cs) {
  for (const auto& o : cs.odd_list)
    if (o.negative) return true;
  for (const auto& e : cs.even_list)
    if (e.negative) return true;
  return false;
}

}  // namespace

std::string to_json(const pairs::PairClass& pc) { return pair_class_doc(pc).dump(2); }

std::string to_json(const reduction::ConditionSet& cs) {
  return condition_set_doc(cs).dump(2);
}

std::string to_json(const reduction::IncongruenceSystem& sys) {
  return system_doc(sys).dump(2);
}

std::string to_json(const scan::ScanReport& rep) { return scan_report_doc(rep).dump(2); }

std::string to_json(const selfcheck::SelfCheckReport& rep) {
  ordered_json j;
  j["pass"] = rep.pass;
  ordered_json checks = ordered_json::array();
  for (const auto& e : rep.entries) {
    ordered_json entry;
    entry["name"] = e.name;
    entry["pass"] = e.pass;
    entry["cases"] = e.cases;
    if (!e.detail.empty()) entry["detail"] = e.detail;
    checks.push_back(std::move(entry));
  }
  j["checks"] = checks;
  return j.dump(2);
}

std::string to_json(const decide::Verdict& v, std::optional<bool> modes_agree) {
  ordered_json j;
  bool never = v.reason == decide::FiniteReason::TrivialAlwaysSolvable;
  j["outcome"] = v.outcome == decide::Outcome::Infinite ? "infinite"
                 : never                                ? "never"
                                                        : "finite";
  if (v.reason) {
    switch (*v.reason) {
      case decide::FiniteReason::TrivialAlwaysSolvable:
        j["reason"] = "trivial_always_solvable";
        break;
      case decide::FiniteReason::MinusOneProduct:
        j["reason"] = "minus_one_product";
        break;
      case decide::FiniteReason::UnsolvableSystem:
        j["reason"] = "unsolvable_system";
        break;
    }
  }
  if (v.witness) j["witness"] = *v.witness;
  if (!v.conditions.minus_one_exponents.empty())
    j["certificate"] = v.conditions.minus_one_exponents;
  j["mode"] = v.mode == reduction::Mode::Literal ? "literal" : "sign_extended";
  if (modes_agree) j["modes_agree"] = *modes_agree;
  if (!sign_sensitive(v.conditions)) {
    j["support"] = "unconditional";
  } else if (v.mode == reduction::Mode::Literal) {
    j["support"] = "literal_reading";
  } else {
    j["support"] = v.outcome == decide::Outcome::Infinite ? "empirical" : "unconditional";
  }
  j["condition_set"] = condition_set_doc(v.conditions);
  if (v.system) j["system"] = system_doc(*v.system);
  return j.dump(2);
}

InputDocument parse_input(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("input: JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw InputError("input: top-level value must be an object");

  InputDocument doc;
  if (j.contains("pairs")) {
    if (!j["pairs"].is_array()) throw InputError("input: \"pairs\" must be an array");
    for (const auto& entry : j["pairs"]) {
      if (!entry.is_array() || entry.size() != 2)
        throw InputError("input: each pair must be a two-element array");
      doc.pairs.emplace_back(as_int(entry[0], "pairs"), as_int(entry[1], "pairs"));
    }
  }
  if (j.contains("order_conditions")) {
    const auto& oc = j["order_conditions"];
    if (!oc.is_object()) throw InputError("input: \"order_conditions\" must be an object");
    if (oc.contains("divisibility")) {
      for (const auto& entry : oc["divisibility"]) {
        if (!entry.is_array() || entry.size() != 2)
          throw InputError("input: divisibility entries are [a, m]");
        doc.order_conditions.divisibility.emplace_back(as_int(entry[0], "divisibility"),
                                                       as_int(entry[1], "divisibility"));
      }
    }
    if (oc.contains("indivisibility")) {
      const auto& ind = oc["indivisibility"];
      if (!ind.is_object() || !ind.contains("q") || !ind.contains("bases"))
        throw InputError("input: indivisibility is {\"q\": prime, \"bases\": [...]}");
      std::int64_t q = as_int(ind["q"], "indivisibility.q");
      if (q < 2) throw InputError("input: indivisibility.q must be a prime");
      doc.order_conditions.indivisibility_q = static_cast<std::uint64_t>(q);
      for (const auto& b : ind["bases"])
        doc.order_conditions.indivisibility_bases.push_back(as_int(b, "indivisibility.bases"));
    }
    if (oc.contains("gcd")) {
      for (const auto& entry : oc["gcd"]) {
        if (!entry.is_array() || entry.size() != 3)
          throw InputError("input: gcd entries are [a, g, m]");
        std::int64_t a = as_int(entry[0], "gcd");
        std::int64_t g = as_int(entry[1], "gcd");
        std::int64_t m = as_int(entry[2], "gcd");
        if (g < 1 || m < 1) throw InputError("input: gcd needs 1 <= g | m");
        doc.order_conditions.gcd.push_back(decide::GcdTriple{
            a, static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(m)});
      }
    }
  }
  return doc;
}

}  // namespace insolv::json_io
