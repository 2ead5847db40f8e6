#pragma once

// Full search for all p >= 2 with p^r | N: a brute-force head up to 2^k,
// then dyadic ranges [2^j, 2^(j+1)] each swept by lattice windows of a common
// half-width chosen as large as the window-size condition allows.

#include <cstdint>
#include <functional>
#include <vector>

#include "rpdiv/bigint.hpp"
#include "rpdiv/coppersmith.hpp"
#include "rpdiv/poly.hpp"

namespace rpdiv {

struct IntervalParams {
  unsigned long d = 0;
  unsigned long m = 0;
  BigInt half_width;  // H, the largest integer strictly below H~
};

// ceil(lg N) + 1
unsigned long lattice_dimension(const BigInt& n);
// Largest m with N^m <= T^(d-1).
unsigned long shift_multiplicity(const BigInt& n, unsigned long d, const BigInt& t);
// Least k with k^2 * r >= 4 * ceil(lg N).
unsigned long head_exponent(const BigInt& n, unsigned long r);

// H~^(d(d-1)) as the exact fraction
//   T^(2drm) / (d^d * 2^(d(d-1)/2) * N^(rm(m+1))).
struct HTildePower {
  BigInt numerator;
  BigInt denominator;
};
HTildePower htilde_power(const BigInt& n, unsigned long r, unsigned long d, unsigned long m, const BigInt& t);

// Requires 2^r <= N, T^r <= N and floor(lg T)^2 * r >= 4 * ceil(lg N) (which
// implies T >= 4^sqrt(lg N / r)). InputError otherwise.
IntervalParams compute_interval_params(const BigInt& n, unsigned long r, const BigInt& t);

// H~ > (1/3) N^(theta^2/r - 1/(d-1)) with theta = r lg T / lg N, for T = 2^t.
// Checked with exact integer bounds on every logarithm involved.
bool htilde_lower_bound_holds(const BigInt& n, unsigned long r, unsigned long t, unsigned long d,
                              unsigned long m);

// { p in [2, 2^k] : p^r | N }
std::vector<BigInt> brute_force_head(const BigInt& n, unsigned long r, unsigned long k);

struct Window {
  BigInt center;
  BigInt half_width;
};

// Windows P = T + H, T + 3H, ...; the last centre is clamped to T' and its
// half-width to P - T, so every centre stays in [T, T'] and P - H >= T.
// Exactly ceil((T' - T) / 2H) windows.
std::vector<Window> plan_windows(const BigInt& low, const BigInt& high, const BigInt& half_width);

struct RangePlan {
  BigInt low;   // T
  BigInt high;  // T'
  IntervalParams params;
  std::vector<Window> windows;
};

struct SearchPlan {
  BigInt n;
  unsigned long r = 0;
  unsigned long head_k = 0;
  BigInt head_bound;  // 2^k
  BigInt root;        // floor(N^(1/r))
  std::vector<RangePlan> ranges;

  std::uint64_t window_count() const;
};

// Validates every window and the coverage of [2, floor(N^(1/r))]; throws
// InvariantError on failure. Requires N >= 2, r >= 1, 2^r <= N.
SearchPlan plan_search(const BigInt& n, unsigned long r);

using WindowObserver = std::function<void(const SearchParams& params, const IntPoly& h)>;

struct SearchOptions {
  unsigned threads = 1;
  bool include_one = false;
  // Seed each window's reduction with the previous window's reduced basis,
  // shifted by 2H, inside a fixed-size chunk of consecutive windows.
  bool chain_windows = true;
  // Called once per window (possibly from worker threads).
  WindowObserver on_window;
};

struct SearchStats {
  std::uint64_t interval_count = 0;
  std::uint64_t lll_calls = 0;
  std::uint64_t exact_fallbacks = 0;
  unsigned long lattice_dim = 0;  // 0 when the head covered everything
  BigInt head_bound;
  double head_ms = 0;
  double lattice_ms = 0;
  double total_ms = 0;
};

struct DivisorReport {
  std::vector<BigInt> divisors;
  SearchStats stats;
};

// Every p in [T, T'] with p^r | N. Requires the same conditions on T as
// compute_interval_params and T < T' <= floor(N^(1/r)).
std::vector<BigInt> search_range(const BigInt& n, unsigned long r, const BigInt& low, const BigInt& high,
                                 const SearchOptions& options = {});

// Every p >= 2 with p^r | N (and 1 when include_one), ascending.
// InputError for N < 2 or r < 1.
DivisorReport find_r_power_divisors(const BigInt& n, unsigned long r, const SearchOptions& options = {});

}  // namespace rpdiv
