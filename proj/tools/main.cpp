// rpdiv: r-power divisor search, integer roots and polynomial GCD from the
// command line. Polynomials are comma-separated coefficients in ASCENDING
// degree: "4,0,-3,1" is x^3 - 3x^2 + 4.
//
// Exit status: 0 success, 1 bad input, 2 internal invariant violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rpdiv/bigint.hpp"
#include "rpdiv/errors.hpp"
#include "rpdiv/oracle.hpp"
#include "rpdiv/poly.hpp"
#include "rpdiv/rootfind.hpp"
#include "rpdiv/scheduler.hpp"

namespace {

using nlohmann::json;
using namespace rpdiv;

struct Globals {
  bool json = false;
  bool verbose = false;
  bool include_one = false;
  unsigned threads = 1;
};

unsigned long parse_r(const std::string& text) {
  const BigInt r = parse_bigint(text);
  if (r < 1 || !r.fits_ulong_p()) throw InputError("r must be a positive integer");
  return r.get_ui();
}

BigInt parse_n(const std::string& text) {
  BigInt n = parse_bigint(text);
  if (n < 2) throw InputError("N must be at least 2");
  return n;
}

void print_list(const std::vector<BigInt>& values) {
  for (const auto& v : values) std::cout << to_string(v) << '\n';
}

json string_array(const std::vector<BigInt>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

int cmd_find(const Globals& g, const std::string& n_text, const std::string& r_text) {
  const BigInt n = parse_n(n_text);
  const unsigned long r = parse_r(r_text);
  SearchOptions options;
  options.threads = g.threads;
  options.include_one = g.include_one;
  const DivisorReport report = find_r_power_divisors(n, r, options);
  if (g.json) {
    json out;
    out["n"] = to_string(n);
    out["r"] = r;
    out["divisors"] = string_array(report.divisors);
    out["stats"] = {{"intervals", report.stats.interval_count},
                    {"lll_calls", report.stats.lll_calls},
                    {"d", report.stats.lattice_dim},
                    {"head_bound", to_string(report.stats.head_bound)},
                    {"ms", report.stats.total_ms}};
    std::cout << out.dump() << '\n';
  } else {
    print_list(report.divisors);
  }
  if (g.verbose) {
    std::cerr << "windows " << report.stats.interval_count << ", lll calls " << report.stats.lll_calls
              << ", exact fallbacks " << report.stats.exact_fallbacks << ", d " << report.stats.lattice_dim
              << ", head bound " << to_string(report.stats.head_bound) << ", head " << report.stats.head_ms
              << " ms, lattice " << report.stats.lattice_ms << " ms\n";
  }
  return 0;
}

int cmd_squarefree(const Globals& g, const std::string& n_text) {
  const BigInt n = parse_n(n_text);
  SearchOptions options;
  options.threads = g.threads;
  const DivisorReport report = find_r_power_divisors(n, 2, options);
  const bool squarefree = report.divisors.empty();
  if (g.json) {
    json out{{"n", to_string(n)}, {"squarefree", squarefree}};
    if (!squarefree) out["p"] = to_string(report.divisors.front());
    std::cout << out.dump() << '\n';
  } else if (squarefree) {
    std::cout << "squarefree\n";
  } else {
    std::cout << "not squarefree: p=" << to_string(report.divisors.front()) << '\n';
  }
  return 0;
}

int cmd_roots(const Globals& g, const std::string& coeffs) {
  const IntPoly f = parse_coefficients(coeffs);
  const auto roots = integer_roots(f);
  if (g.json) {
    std::cout << json{{"roots", string_array(roots)}}.dump() << '\n';
  } else {
    print_list(roots);
  }
  return 0;
}

IntPoly full_gcd(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw InputError("gcd of the zero polynomial");
  const auto pf = primitive_part(f);
  const auto pg = primitive_part(g);
  const unsigned long n = std::max({f.degree(), g.degree(), 1});
  const BigInt norm = std::max(sup_norm(pf.prim), sup_norm(pg.prim));
  const unsigned long b = std::max<unsigned long>(n, ceil_lg(norm));
  BigInt c;
  mpz_gcd(c.get_mpz_t(), pf.content.get_mpz_t(), pg.content.get_mpz_t());
  return heuristic_gcd(pf.prim, pg.prim, n, b).h * c;
}

int cmd_gcd(const Globals& g, const std::string& f_text, const std::string& g_text) {
  const IntPoly h = full_gcd(parse_coefficients(f_text), parse_coefficients(g_text));
  if (g.json) {
    std::cout << json{{"gcd", to_coefficient_string(h)}}.dump() << '\n';
  } else {
    std::cout << to_coefficient_string(h) << '\n';
  }
  return 0;
}

// N = p^r q with p the least prime >= 2^(bits/2r) and q the least prime
// >= 2^bits / p^r, so p ~ N^(1/2r) and q ~ N^(1/2).
struct Planted {
  BigInt n, p, q;
};

Planted planted_instance(unsigned long bits, unsigned long r) {
  Planted out;
  const BigInt start = pow2(bits / (2 * r));
  mpz_nextprime(out.p.get_mpz_t(), BigInt(start - 1).get_mpz_t());
  const BigInt target = pow2(bits) / pow(out.p, r);
  mpz_nextprime(out.q.get_mpz_t(), BigInt(target - 1).get_mpz_t());
  out.n = pow(out.p, r) * out.q;
  return out;
}

int cmd_bench(const Globals& g, unsigned long r, const std::string& range, unsigned long step) {
  const auto dots = range.find("..");
  if (dots == std::string::npos) throw InputError("--bits expects a..b");
  const BigInt lo = parse_bigint(range.substr(0, dots));
  const BigInt hi = parse_bigint(range.substr(dots + 2));
  if (lo < 2 || hi > 64) throw InputError("--bits range must lie in [2, 64]");
  if (step < 1) throw InputError("--step must be positive");
  if (r < 1) throw InputError("--r must be positive");
  std::cout << "bits,intervals,ms\n";
  for (unsigned long bits = lo.get_ui(); bits <= hi; bits += step) {
    const Planted inst = planted_instance(bits, r);
    if (pow2(r) > inst.n) throw InputError("r too large for " + std::to_string(bits) + " bits");
    SearchOptions options;
    options.threads = g.threads;
    const DivisorReport report = find_r_power_divisors(inst.n, r, options);
    if (!std::binary_search(report.divisors.begin(), report.divisors.end(), inst.p)) {
      throw InvariantError("planted p = " + to_string(inst.p) + " not reported for N = " + to_string(inst.n));
    }
    std::cout << bits << ',' << report.stats.interval_count << ',' << report.stats.total_ms << '\n';
    if (g.verbose) {
      std::cerr << "bits " << bits << ": N = " << to_string(inst.n) << " = " << to_string(inst.p) << "^" << r
                << " * " << to_string(inst.q) << '\n';
    }
  }
  return 0;
}

IntMatrix parse_matrix(const std::string& text) {
  IntMatrix rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_coefficients(row).coeffs());
  // parse_coefficients trims trailing zeros; restore the common width.
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.size());
  for (auto& r : rows) r.resize(width, BigInt(0));
  return rows;
}

std::string vector_string(const IntVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"r-power divisor search and integer polynomial utilities"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--verbose,-v", g.verbose, "Statistics on stderr");
  app.add_flag("--include-one", g.include_one, "Report p = 1 as well (find)");
  app.add_option("--threads,-t", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u));

  std::function<int()> action;
  std::string a, b, c;
  unsigned long r_opt = 0, step = 1;

  auto* find = app.add_subcommand("find", "All p >= 2 with p^r | N")->fallthrough();
  find->add_option("N", a, "Decimal or 0x-hex")->required();
  find->add_option("r", b)->required();
  find->callback([&] { action = [&] { return cmd_find(g, a, b); }; });

  auto* sqf = app.add_subcommand("squarefree", "Squarefreeness of N")->fallthrough();
  sqf->add_option("N", a)->required();
  sqf->callback([&] { action = [&] { return cmd_squarefree(g, a); }; });

  auto* roots = app.add_subcommand("roots", "Integer roots of a polynomial")->fallthrough();
  roots->add_option("coeffs", a, "Ascending coefficients, e.g. 4,0,-3,1")->required()->allow_extra_args(false);
  roots->callback([&] { action = [&] { return cmd_roots(g, a); }; });

  auto* gcd = app.add_subcommand("gcd", "GCD of two polynomials")->fallthrough();
  gcd->add_option("f", a)->required();
  gcd->add_option("g", b)->required();
  gcd->callback([&] { action = [&] { return cmd_gcd(g, a, b); }; });

  auto* bench = app.add_subcommand("bench", "Window counts on planted N = p^r q")->fallthrough();
  bench->add_option("--r", r_opt)->required();
  bench->add_option("--bits", a, "a..b")->required();
  bench->add_option("--step", step)->capture_default_str();
  bench->callback([&] { action = [&] { return cmd_bench(g, r_opt, a, step); }; });

  auto* oracle = app.add_subcommand("oracle", "Brute-force reference computations")->fallthrough();
  oracle->require_subcommand(1);
  auto* o_trial = oracle->add_subcommand("trial", "p <= bound with p^r | N")->fallthrough();
  o_trial->add_option("N", a)->required();
  o_trial->add_option("r", b)->required();
  o_trial->add_option("bound", c)->required();
  o_trial->callback([&] {
    action = [&] {
      print_list(oracle::trial_divisors(parse_n(a), parse_r(b), parse_bigint(c)));
      return 0;
    };
  });
  auto* o_roots = oracle->add_subcommand("roots", "Integer roots by divisor testing")->fallthrough();
  o_roots->add_option("coeffs", a)->required();
  o_roots->callback([&] {
    action = [&] {
      print_list(oracle::integer_roots_naive(parse_coefficients(a)));
      return 0;
    };
  });
  auto* o_gcd = oracle->add_subcommand("gcd", "Primitive PRS gcd")->fallthrough();
  o_gcd->add_option("f", a)->required();
  o_gcd->add_option("g", b)->required();
  o_gcd->callback([&] {
    action = [&] {
      std::cout << to_coefficient_string(oracle::gcd_classical(parse_coefficients(a), parse_coefficients(b)))
                << '\n';
      return 0;
    };
  });
  auto* o_res = oracle->add_subcommand("resultant", "Sylvester determinant")->fallthrough();
  o_res->add_option("f", a)->required();
  o_res->add_option("g", b)->required();
  o_res->callback([&] {
    action = [&] {
      std::cout << to_string(oracle::resultant_naive(parse_coefficients(a), parse_coefficients(b))) << '\n';
      return 0;
    };
  });
  auto* o_svp = oracle->add_subcommand("svp", "Shortest vector by enumeration")->fallthrough();
  o_svp->add_option("rows", a, "Rows separated by ';', e.g. \"12,2;13,4\"")->required();
  o_svp->add_option("radius", r_opt)->required();
  o_svp->callback([&] {
    action = [&] {
      std::cout << vector_string(oracle::shortest_vector_enum(parse_matrix(a), r_opt)) << '\n';
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  try {
    return action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
