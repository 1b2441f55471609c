// bps: generating functions of BPS invariants on P^2 and Hirzebruch surfaces.

#include "bps/compute.hpp"
#include "bps/serialize.hpp"
#include "bps/verify.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace bps;

namespace {

enum Exit { ok = 0, verification_failed = 1, invalid_input = 2 };

SurfaceId parse_surface(const std::string& s) {
  if (s == "p2") return SurfaceId::p2();
  const std::string pre = "hirzebruch:";
  if (s.rfind(pre, 0) == 0) {
    std::size_t used = 0;
    int ell = -1;
    try {
      ell = std::stoi(s.substr(pre.size()), &used);
    } catch (const std::exception&) {
    }
    if (ell >= 0 && used == s.size() - pre.size()) return SurfaceId::hirzebruch(ell);
  }
  throw std::invalid_argument("surface must be p2 or hirzebruch:<l> with l >= 0");
}

std::vector<long> parse_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw std::invalid_argument("not an integer list: '" + s + "'");
    out.push_back(v);
  }
  return out;
}

// "suitable", "near-pullback", or "m,n" with an optional trailing + or - for J_{m,n +- eps}
Polarization parse_polarization(std::string s, const SurfaceId& S) {
  if (!S.is_hirzebruch()) {
    if (s.empty() || s == "H") return Polarization::hyperplane();
    throw std::invalid_argument("P^2 takes no polarization");
  }
  if (s.empty() || s == "suitable") return Polarization::suitable();
  if (s == "near-pullback") return Polarization::near_pullback_h();
  int side = 0;
  if (!s.empty() && (s.back() == '+' || s.back() == '-')) {
    side = s.back() == '+' ? 1 : -1;
    s.pop_back();
  }
  std::vector<long> mn = parse_list(s);
  if (mn.size() != 2 || mn[0] <= 0 || mn[1] <= 0) throw std::invalid_argument("polarization must be suitable or m,n with m, n > 0");
  return Polarization::jmn(mn[0], mn[1], side);
}

void print_error(const std::string& format, const std::string& kind, const std::string& message) {
  if (format == "json")
    std::cout << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump(2) << "\n";
  else
    std::cerr << "error (" << kind << "): " << message << "\n";
}

void print_text(const JobResult& res) {
  const GenFun& g = res.rational;
  std::cout << "surface " << g.surface.name() << ", r = " << g.r << ", c1 = (";
  for (std::size_t i = 0; i < g.c1.size(); ++i) std::cout << (i ? "," : "") << to_string(g.c1[i]);
  std::cout << "), J = " << g.J.describe() << "\n\nOmega_bar series:\n" << g.series;
  if (!res.table) return;
  std::cout << "\n c2   dim  euler  betti\n";
  for (const auto& row : res.table->rows) {
    std::cout << " " << to_string(row.c2) << "  " << row.dim << "  " << row.euler << " ";
    for (long b : row.betti) std::cout << " " << b;
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact generating functions of BPS invariants of P^2 and Hirzebruch surfaces"};
  app.require_subcommand(1);

  std::string surface = "p2", c1, polarization, format = "text", cache_dir;
  int rank = 1, qorders = 5, jobs = 1;
  auto* compute = app.add_subcommand("compute", "compute one generating function and its invariant table");
  compute->add_option("--surface", surface, "p2 or hirzebruch:<l>");
  compute->add_option("--rank", rank, "rank r")->required();
  compute->add_option("--c1", c1, "first Chern class: d on P^2, x,y (x C + y f) on Hirzebruch surfaces; default 0");
  compute->add_option("--polarization", polarization, "suitable, near-pullback, or m,n (optional + or - suffix)");
  compute->add_option("--qorders", qorders, "number of q-levels from the leading nonzero term");
  compute->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  compute->add_option("--cache-dir", cache_dir, "cache root (overrides BPS_CACHE_DIR)");
  compute->add_option("--jobs", jobs, "worker threads (used by check)");

  std::string suite = "all";
  auto* check = app.add_subcommand("check", "run self-checks");
  check->add_option("suite", suite, "core, table1, routes or all")->check(CLI::IsMember({"core", "table1", "routes", "all"}));
  check->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  check->add_option("--jobs", jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : invalid_input;
  }

  if (check->parsed()) {
    std::vector<CheckResult> res = run_checks(checks_for(suite), jobs);
    bool all = true;
    Json report = Json::array();
    for (const auto& r : res) {
      all = all && r.passed;
      report.push_back(Json{{"suite", r.suite}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      if (format == "text") std::cout << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.name << (r.passed ? "" : " (" + r.detail + ")") << "\n";
    }
    if (format == "json") std::cout << Json{{"version", format_version}, {"passed", all}, {"checks", report}}.dump(2) << "\n";
    return all ? ok : verification_failed;
  }

  JobSpec spec;
  std::optional<SeriesStore> store;
  try {
    spec.surface = parse_surface(surface);
    spec.r = rank;
    if (c1.empty())
      spec.c1 = spec.surface.zero();
    else
      for (long x : parse_list(c1)) spec.c1.push_back(Rational(x));
    spec.J = parse_polarization(polarization, spec.surface);
    spec.qorders = qorders;
    validate(spec);
    store = SeriesStore::open(cache_dir);
  } catch (const std::exception& e) {
    print_error(format, "invalid_input", e.what());
    return invalid_input;
  }

  JobResult res;
  try {
    res = run_job(spec, store);
  } catch (const std::invalid_argument& e) {
    print_error(format, "invalid_input", e.what());
    return invalid_input;
  } catch (const std::domain_error& e) {
    const std::string msg = e.what();
    if (msg == "polarization on wall") {
      print_error(format, "invalid_input", msg);
      return invalid_input;
    }
    print_error(format, "verification_failure", msg);
    return verification_failed;
  }

  if (format == "json") {
    Json out = to_json(res.rational);
    out = Json{{"version", format_version}, {"genfun", out}};
    if (res.table) out["table"] = to_json(*res.table);
    std::cout << out.dump(2) << "\n";
  } else if (format == "csv") {
    if (res.table) std::cout << to_csv(*res.table);
  } else {
    print_text(res);
  }
  return ok;
}
