#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "insolv/decide.hpp"
#include "insolv/json_io.hpp"
#include "insolv/pairs.hpp"
#include "insolv/reduction.hpp"
#include "insolv/scan.hpp"
#include "insolv/selfcheck.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitSolverCap = 3;
constexpr int kExitInconsistent = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw insolv::json_io::InputError("cannot read input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& doc) { std::cout << doc << "\n"; }

void emit_error(const std::string& message) {
  ordered_json j;
  j["error"] = message;
  std::cout << j.dump(2) << "\n";
  std::cerr << "insolv: " << message << "\n";
}

insolv::reduction::Mode parse_mode(const std::string& name) {
  if (name == "literal") return insolv::reduction::Mode::Literal;
  if (name == "sign-extended" || name == "sign_extended")
    return insolv::reduction::Mode::SignExtended;
  throw insolv::json_io::InputError("unknown mode: " + name);
}

struct CommonOptions {
  std::string input;
  std::string mode = "sign-extended";
  std::uint64_t solver_cap = std::uint64_t{1} << 24;
  std::uint64_t seed = 1;
  std::uint64_t preflight = 10000;
};

insolv::decide::SolverOptions solver_options(const CommonOptions& c) {
  return insolv::decide::SolverOptions{c.solver_cap, c.preflight, c.seed};
}

std::vector<std::pair<std::int64_t, std::int64_t>> load_pairs(const std::string& path) {
  auto doc = insolv::json_io::parse_input(slurp(path));
  if (doc.pairs.empty())
    throw insolv::json_io::InputError("input must contain a nonempty \"pairs\" array");
  return doc.pairs;
}

int run_decide(const CommonOptions& c) {
  auto prs = load_pairs(c.input);
  auto mode = parse_mode(c.mode);
  auto other = mode == insolv::reduction::Mode::Literal
                   ? insolv::reduction::Mode::SignExtended
                   : insolv::reduction::Mode::Literal;
  auto opts = solver_options(c);
  insolv::decide::Verdict v = insolv::decide::decide(prs, mode, opts);
  std::optional<bool> agree;
  try {
    insolv::decide::Verdict w = insolv::decide::decide(prs, other, opts);
    agree = v.outcome == w.outcome && v.reason == w.reason;
  } catch (const insolv::decide::SolverCapExceeded&) {
    // The requested mode decided fine; the comparison mode is just unknown.
  }
  emit(insolv::json_io::to_json(v, agree));
  return kExitOk;
}

int run_scan(const CommonOptions& c, std::uint64_t from, std::uint64_t to, int workers,
             std::uint64_t chunk, bool with_verdict) {
  auto prs = load_pairs(c.input);
  auto cs = insolv::reduction::build_conditions(prs);
  insolv::scan::Options so;
  so.workers = workers;
  so.chunk = chunk;
  insolv::scan::ScanReport rep = insolv::scan::scan(prs, cs, from, to, so);

  ordered_json out = ordered_json::parse(insolv::json_io::to_json(rep));
  int code = rep.discrepancies.empty() ? kExitOk : kExitInconsistent;

  if (with_verdict) {
    auto v = insolv::decide::decide(prs, parse_mode(c.mode), solver_options(c));
    bool expects_matches = v.outcome == insolv::decide::Outcome::Infinite;
    bool consistent = expects_matches ? rep.matching_count > 0 : rep.matching_count == 0;
    out["verdict"] = ordered_json::parse(insolv::json_io::to_json(v, std::nullopt));
    out["verdict_consistent"] = consistent;
    if (!consistent) code = kExitInconsistent;
  }
  emit(out.dump(2));
  return code;
}

int run_orders(const std::string& which, const CommonOptions& c,
               std::vector<std::int64_t> args, std::uint64_t scan_from,
               std::uint64_t scan_to, std::size_t max_witnesses) {
  insolv::json_io::OrderConditions oc;
  if (!c.input.empty()) {
    oc = insolv::json_io::parse_input(slurp(c.input)).order_conditions;
  }

  ordered_json out;
  if (which == "div") {
    auto reqs = oc.divisibility;
    if (!args.empty()) {
      if (args.size() % 2 != 0)
        throw insolv::json_io::InputError("orders div expects a m [a m ...]");
      for (std::size_t i = 0; i < args.size(); i += 2)
        reqs.emplace_back(args[i], args[i + 1]);
    }
    if (reqs.empty()) throw insolv::json_io::InputError("orders div: no requirements given");
    for (auto& [a, m] : reqs)
      if (m < 0) m = -m;
    auto res = insolv::decide::decide_divisibility(reqs);
    out["kind"] = "divisibility";
    out["satisfiable"] = true;
    ordered_json r = ordered_json::array();
    for (const auto& [a, m] : reqs) r.push_back({a, m});
    out["requirements"] = r;
    ordered_json n = ordered_json::array();
    for (const auto& [a, m] : res.normalized) n.push_back({a, m});
    out["normalized"] = n;
    ordered_json enc = ordered_json::array();
    for (const auto& [x, y] : res.encoded_pairs) enc.push_back({x, y});
    out["encoded_pairs"] = enc;
    out["witnesses"] =
        insolv::scan::divisibility_witnesses(reqs, scan_from, scan_to, max_witnesses);
  } else if (which == "indiv") {
    std::uint64_t q = 0;
    std::vector<std::int64_t> bases = oc.indivisibility_bases;
    if (oc.indivisibility_q) q = *oc.indivisibility_q;
    if (!args.empty()) {
      if (args.size() < 2)
        throw insolv::json_io::InputError("orders indiv expects q base [base ...]");
      q = static_cast<std::uint64_t>(args[0]);
      bases.assign(args.begin() + 1, args.end());
    }
    if (q == 0 || bases.empty())
      throw insolv::json_io::InputError("orders indiv: need q and at least one base");
    auto res = insolv::decide::decide_indivisibility(q, bases);
    out["kind"] = "indivisibility";
    out["q"] = q;
    out["bases"] = bases;
    out["satisfiable"] = res.satisfiable;
    if (!res.satisfiable) out["certificate"] = res.certificate;
    if (res.satisfiable)
      out["witnesses"] =
          insolv::scan::indivisibility_witnesses(q, bases, scan_from, scan_to, max_witnesses);
  } else if (which == "gcd") {
    std::vector<insolv::decide::GcdTriple> triples = oc.gcd;
    if (!args.empty()) {
      if (args.size() % 3 != 0)
        throw insolv::json_io::InputError("orders gcd expects a g m [a g m ...]");
      for (std::size_t i = 0; i < args.size(); i += 3) {
        if (args[i + 1] < 1 || args[i + 2] < 1)
          throw insolv::json_io::InputError("orders gcd: need 1 <= g | m");
        triples.push_back(insolv::decide::GcdTriple{
            args[i], static_cast<std::uint64_t>(args[i + 1]),
            static_cast<std::uint64_t>(args[i + 2])});
      }
    }
    if (triples.empty()) throw insolv::json_io::InputError("orders gcd: no conditions given");
    auto splits = insolv::decide::split_gcd(triples);
    out["kind"] = "gcd";
    ordered_json ts = ordered_json::array();
    for (const auto& t : triples) ts.push_back({t.a, t.g, t.m});
    out["triples"] = ts;
    ordered_json sp = ordered_json::array();
    for (const auto& s : splits) {
      ordered_json entry;
      entry["q"] = s.q;
      ordered_json conds = ordered_json::array();
      for (const auto& t : s.conditions) {
        ordered_json cond;
        cond["a"] = t.a;
        cond["m"] = t.m;
        cond["g"] = t.g;
        conds.push_back(std::move(cond));
      }
      entry["conditions"] = conds;
      sp.push_back(std::move(entry));
    }
    out["splits"] = sp;
    out["witnesses"] = insolv::scan::gcd_witnesses(triples, scan_from, scan_to, max_witnesses);
  } else {
    throw insolv::json_io::InputError("orders: unknown decider " + which);
  }
  emit(out.dump(2));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decide and empirically verify the simultaneous insolvability of "
               "exponential congruences a_i^x = b_i (mod p)"};
  app.require_subcommand(1);

  CommonOptions common;
  std::int64_t cls_a = 0, cls_b = 0;
  std::uint64_t from = 3, to = 1000000;
  int workers = 1;
  std::uint64_t chunk = std::uint64_t{1} << 16;
  bool with_verdict = false;
  std::string orders_which;
  std::vector<std::int64_t> orders_args;
  std::uint64_t scan_from = 3, scan_to = 100000;
  std::size_t max_witnesses = 100;
  std::uint64_t selfcheck_limit = 10000;

  CLI::App* cls = app.add_subcommand("classify", "classify a single pair (a, b)");
  cls->add_option("a", cls_a, "first element")->required();
  cls->add_option("b", cls_b, "second element")->required();

  CLI::App* dec = app.add_subcommand("decide", "decide a pair system from a JSON file");
  dec->add_option("--input", common.input, "input JSON file")->required();
  dec->add_option("--mode", common.mode, "literal or sign-extended");
  dec->add_option("--solver-cap", common.solver_cap, "exhaustive search cap");
  dec->add_option("--seed", common.seed, "preflight RNG seed");
  dec->add_option("--preflight", common.preflight, "preflight sample count");

  CLI::App* scn = app.add_subcommand("scan", "scan primes and verify empirically");
  scn->add_option("--input", common.input, "input JSON file")->required();
  scn->add_option("--from", from, "range start (inclusive)");
  scn->add_option("--to", to, "range end (exclusive)");
  scn->add_option("--workers", workers, "worker thread count")->envname("INSOLV_WORKERS");
  scn->add_option("--chunk", chunk, "integers per work unit");
  scn->add_flag("--with-verdict", with_verdict, "also decide and check consistency");
  scn->add_option("--mode", common.mode, "literal or sign-extended");
  scn->add_option("--solver-cap", common.solver_cap, "exhaustive search cap");
  scn->add_option("--seed", common.seed, "preflight RNG seed");

  CLI::App* ord = app.add_subcommand("orders", "order-condition deciders with witness mining");
  ord->add_option("decider", orders_which, "div, indiv or gcd")->required();
  ord->add_option("values", orders_args, "inline integers for the decider");
  ord->add_option("--input", common.input, "input JSON file with order_conditions");
  ord->add_option("--scan-from", scan_from, "witness mining range start");
  ord->add_option("--scan-to", scan_to, "witness mining range end");
  ord->add_option("--max-witnesses", max_witnesses, "maximum witnesses to report");

  CLI::App* chk = app.add_subcommand("selfcheck", "run the built-in consistency suites");
  chk->add_option("--limit", selfcheck_limit, "prime bound for the suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(cls)) {
      emit(insolv::json_io::to_json(insolv::pairs::classify_pair(cls_a, cls_b)));
      return kExitOk;
    }
    if (app.got_subcommand(dec)) return run_decide(common);
    if (app.got_subcommand(scn))
      return run_scan(common, from, to, workers, chunk, with_verdict);
    if (app.got_subcommand(ord))
      return run_orders(orders_which, common, orders_args, scan_from, scan_to, max_witnesses);
    if (app.got_subcommand(chk)) {
      auto rep = insolv::selfcheck::run_selfcheck(selfcheck_limit);
      emit(insolv::json_io::to_json(rep));
      return rep.pass ? kExitOk : kExitInconsistent;
    }
  } catch (const insolv::decide::SolverCapExceeded& e) {
    emit_error(e.what());
    return kExitSolverCap;
  } catch (const insolv::json_io::InputError& e) {
    emit_error(e.what());
    return kExitBadInput;
  } catch (const std::exception& e) {
    emit_error(e.what());
    return kExitBadInput;
  }
  return kExitUsage;
}
