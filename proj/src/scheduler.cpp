#include "rpdiv/scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <utility>

#include "rpdiv/errors.hpp"
#include "rpdiv/kernels.hpp"

namespace rpdiv {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Consecutive windows handled as one unit of work. Fixed, so the sequence of
// reductions (and every statistic) does not depend on the thread count.
constexpr std::size_t kChunkSize = 16;

void require_search_input(const BigInt& n, unsigned long r) {
  if (n < 2) throw InputError("N must be at least 2");
  if (r < 1) throw InputError("r must be at least 1");
}

}  // namespace

unsigned long lattice_dimension(const BigInt& n) { return ceil_lg(n) + 1; }

unsigned long shift_multiplicity(const BigInt& n, unsigned long d, const BigInt& t) {
  const BigInt limit = pow(t, d - 1);
  unsigned long lo = 0, hi = d - 1;
  while (lo < hi) {
    const unsigned long mid = lo + (hi - lo + 1) / 2;
    if (pow(n, mid) <= limit) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

unsigned long head_exponent(const BigInt& n, unsigned long r) {
  const unsigned long target = 4 * ceil_lg(n);
  unsigned long k = 0;
  while (k * k * r < target) ++k;
  return k;
}

HTildePower htilde_power(const BigInt& n, unsigned long r, unsigned long d, unsigned long m, const BigInt& t) {
  HTildePower out;
  out.numerator = pow(t, 2 * d * r * m);
  out.denominator = pow(BigInt(d), d) * pow2(d * (d - 1) / 2) * pow(n, r * m * (m + 1));
  return out;
}

IntervalParams compute_interval_params(const BigInt& n, unsigned long r, const BigInt& t) {
  require_search_input(n, r);
  if (pow2(r) > n) throw InputError("r exceeds lg N (2^r > N)");
  if (t < 2) throw InputError("T must be at least 2");
  if (pow(t, r) > n) throw InputError("T exceeds N^(1/r)");
  const unsigned long floor_lg_t = bit_length(t) - 1;
  if (floor_lg_t * floor_lg_t * r < 4 * ceil_lg(n)) {
    throw InputError("T too small: need floor(lg T)^2 * r >= 4 * ceil(lg N)");
  }
  IntervalParams p;
  p.d = lattice_dimension(n);
  p.m = shift_multiplicity(n, p.d, t);
  if (p.m < 1 || p.m * r > p.d) {
    throw InvariantError("shift multiplicity out of range");
  }
  const HTildePower power = htilde_power(n, r, p.d, p.m, t);
  const unsigned long e = p.d * (p.d - 1);
  BigInt h = integer_kth_root(BigInt(power.numerator / power.denominator), e);
  // h^e <= num/den < (h+1)^e; H must satisfy H^e < num/den strictly.
  if (pow(h, e) * power.denominator == power.numerator) h -= 1;
  if (h < 1) throw InvariantError("window half-width below 1");
  p.half_width = std::move(h);
  return p;
}

bool htilde_lower_bound_holds(const BigInt& n, unsigned long r, unsigned long t, unsigned long d,
                              unsigned long m) {
  // In logarithms, times d(d-1):
  //   lg num - lg den > d(d-1) r t^2 / L - d L - d(d-1) lg 3,   L = lg N.
  // Use lg num - lg den > bits(num) - 1 - bits(den), lg 3 > 79/50 and
  // L >= j/K with j = bits(N^K) - 1, then clear the denominators 50 K j.
  constexpr unsigned long kScale = 1024;
  const HTildePower power = htilde_power(n, r, d, m, pow2(t));
  const BigInt j = BigInt(bit_length(pow(n, kScale))) - 1;
  const BigInt gap = BigInt(bit_length(power.numerator)) - 1 - BigInt(bit_length(power.denominator));
  const BigInt dd = BigInt(d) * (d - 1);
  const BigInt lhs = 50 * kScale * j * gap + 79 * kScale * j * dd + 50 * BigInt(d) * j * j;
  const BigInt rhs = 50 * BigInt(kScale) * kScale * dd * r * BigInt(t) * t;
  return lhs > rhs;
}

std::vector<BigInt> brute_force_head(const BigInt& n, unsigned long r, unsigned long k) {
  require_search_input(n, r);
  std::vector<BigInt> out;
  BigInt upper = pow2(k);
  const BigInt root = integer_kth_root(n, r);
  if (root < upper) upper = root;
  if (upper < 2) return out;

  const auto digits = kernels::to_digits16(n);
  const BigInt word_limit(kernels::kModulusLimit - 1);
  const std::uint32_t last_word = static_cast<std::uint32_t>(std::min(upper, word_limit).get_ui());
  constexpr std::uint32_t kBlock = 4096;
  std::vector<std::uint32_t> moduli, rems;
  for (std::uint32_t start = 2; start <= last_word;) {
    const std::uint32_t stop = std::min<std::uint64_t>(std::uint64_t{start} + kBlock - 1, last_word);
    moduli.clear();
    for (std::uint32_t p = start; p <= stop; ++p) moduli.push_back(p);
    rems.assign(moduli.size(), 0);
    kernels::residues(digits, moduli, rems);
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      if (rems[i] != 0) continue;
      const BigInt p(moduli[i]);
      if (mpz_divisible_p(n.get_mpz_t(), pow(p, r).get_mpz_t())) out.push_back(p);
    }
    if (stop == last_word) break;
    start = stop + 1;
  }
  // Beyond word-sized moduli (only for very large N).
  for (BigInt p = BigInt(kernels::kModulusLimit); p <= upper; ++p) {
    if (mpz_divisible_p(n.get_mpz_t(), pow(p, r).get_mpz_t())) out.push_back(p);
  }
  return out;
}

std::vector<Window> plan_windows(const BigInt& low, const BigInt& high, const BigInt& half_width) {
  if (half_width < 1) throw InputError("H must be at least 1");
  if (high < low) throw InputError("empty range");
  std::vector<Window> out;
  const BigInt span = high - low;
  const BigInt step = 2 * half_width;
  BigInt count = (span + step - 1) / step;
  for (BigInt i = 0; i < count; ++i) {
    Window w;
    w.center = low + (2 * i + 1) * half_width;
    if (w.center > high) w.center = high;
    w.half_width = std::min(half_width, BigInt(w.center - low));
    out.push_back(std::move(w));
  }
  return out;
}

std::uint64_t SearchPlan::window_count() const {
  std::uint64_t total = 0;
  for (const auto& range : ranges) total += range.windows.size();
  return total;
}

namespace {

void check_range_plan(const BigInt& n, unsigned long r, const RangePlan& range) {
  BigInt covered = range.low;  // every p in [low, covered] is inside some window
  for (const auto& w : range.windows) {
    SearchParams sp{n, r, range.params.m, range.params.d, w.center, w.half_width};
    try {
      validate(sp);
    } catch (const InputError& e) {
      throw InvariantError(std::string("planned window invalid: ") + e.what());
    }
    if (w.center - w.half_width > covered + 1) throw InvariantError("gap between windows");
    covered = std::max(covered, BigInt(w.center + w.half_width));
  }
  if (covered < range.high) throw InvariantError("windows do not reach the end of the range");
}

}  // namespace

SearchPlan plan_search(const BigInt& n, unsigned long r) {
  require_search_input(n, r);
  if (pow2(r) > n) throw InputError("r exceeds lg N (2^r > N)");
  SearchPlan plan;
  plan.n = n;
  plan.r = r;
  plan.head_k = head_exponent(n, r);
  plan.head_bound = pow2(plan.head_k);
  plan.root = integer_kth_root(n, r);

  for (unsigned long j = plan.head_k; pow2(j) < plan.root; ++j) {
    RangePlan range;
    range.low = pow2(j);
    range.high = std::min(pow2(j + 1), plan.root);
    range.params = compute_interval_params(n, r, range.low);
    if (!htilde_lower_bound_holds(n, r, j, range.params.d, range.params.m)) {
      throw InvariantError("window half-width lower bound fails for the range starting at 2^" +
                           std::to_string(j));
    }
    range.windows = plan_windows(range.low, range.high, range.params.half_width);
    check_range_plan(n, r, range);
    plan.ranges.push_back(std::move(range));
  }

  // Head [2, 2^k] followed by contiguous dyadic ranges up to the root.
  BigInt covered = plan.head_bound;
  for (const auto& range : plan.ranges) {
    if (range.low > covered) throw InvariantError("gap between ranges");
    covered = range.high;
  }
  if (covered < plan.root) throw InvariantError("plan does not reach floor(N^(1/r))");
  return plan;
}

namespace {

struct Task {
  const RangePlan* range;
  std::size_t first;  // window index inside the range
  std::size_t count;
};

struct ChunkResult {
  std::vector<BigInt> divisors;
  std::uint64_t lll_calls = 0;
  std::uint64_t exact_fallbacks = 0;
};

ChunkResult run_chunk(const BigInt& n, unsigned long r, const Task& task, const SearchOptions& options) {
  ChunkResult out;
  const IntervalParams& ip = task.range->params;
  IntMatrix previous;
  for (std::size_t i = task.first; i < task.first + task.count; ++i) {
    const Window& w = task.range->windows[i];
    const SearchParams sp{n, r, ip.m, ip.d, w.center, w.half_width};
    // Only full-width neighbours are exactly 2H apart.
    const bool chained = options.chain_windows && !previous.empty() && w.half_width == ip.half_width &&
                         task.range->windows[i - 1].half_width == ip.half_width &&
                         w.center - task.range->windows[i - 1].center == 2 * ip.half_width;
    LatticeBasis basis = chained ? LatticeBasis(shift_scaled_basis(previous, 2))
                                 : build_scaled_basis(build_shift_polynomials(n, r, ip.m, ip.d, w.center),
                                                      w.half_width);
    WindowReduction red = reduce_window(sp, std::move(basis));
    ++out.lll_calls;
    if (red.used_exact_fallback) ++out.exact_fallbacks;
    if (options.on_window) options.on_window(sp, red.h);
    for (auto& p : divisors_from_polynomial(sp, red.h)) out.divisors.push_back(std::move(p));
    previous = std::move(red.reduced_rows);
  }
  return out;
}

std::vector<Task> make_tasks(const std::vector<const RangePlan*>& ranges) {
  std::vector<Task> tasks;
  for (const RangePlan* range : ranges) {
    for (std::size_t first = 0; first < range->windows.size(); first += kChunkSize) {
      tasks.push_back({range, first, std::min(kChunkSize, range->windows.size() - first)});
    }
  }
  return tasks;
}

ChunkResult run_tasks(const BigInt& n, unsigned long r, const std::vector<Task>& tasks,
                      const SearchOptions& options) {
  std::vector<ChunkResult> results(tasks.size());
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, tasks.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = run_chunk(n, r, tasks[i], options);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        try {
          results[i] = run_chunk(n, r, tasks[i], options);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(tasks.size());
          return;
        }
      }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }
  ChunkResult merged;
  for (auto& res : results) {
    merged.lll_calls += res.lll_calls;
    merged.exact_fallbacks += res.exact_fallbacks;
    for (auto& p : res.divisors) merged.divisors.push_back(std::move(p));
  }
  return merged;
}

void sort_unique(std::vector<BigInt>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<BigInt> search_range(const BigInt& n, unsigned long r, const BigInt& low, const BigInt& high,
                                 const SearchOptions& options) {
  require_search_input(n, r);
  if (!(low < high)) throw InputError("search_range needs T < T'");
  if (pow(high, r) > n) throw InputError("T' exceeds N^(1/r)");
  RangePlan range;
  range.low = low;
  range.high = high;
  range.params = compute_interval_params(n, r, low);
  range.windows = plan_windows(low, high, range.params.half_width);
  check_range_plan(n, r, range);
  ChunkResult res = run_tasks(n, r, make_tasks({&range}), options);
  std::vector<BigInt> out;
  for (auto& p : res.divisors) {
    if (p >= low && p <= high) out.push_back(std::move(p));
  }
  sort_unique(out);
  return out;
}

DivisorReport find_r_power_divisors(const BigInt& n, unsigned long r, const SearchOptions& options) {
  require_search_input(n, r);
  const auto start = Clock::now();
  DivisorReport report;
  if (pow2(r) > n) {
    if (options.include_one) report.divisors.push_back(1);
    report.stats.total_ms = ms_since(start);
    return report;
  }
  const SearchPlan plan = plan_search(n, r);
  report.stats.head_bound = plan.head_bound;
  report.stats.interval_count = plan.window_count();

  const auto head_start = Clock::now();
  report.divisors = brute_force_head(n, r, plan.head_k);
  report.stats.head_ms = ms_since(head_start);

  if (!plan.ranges.empty()) {
    report.stats.lattice_dim = plan.ranges.front().params.d;
    std::vector<const RangePlan*> ranges;
    for (const auto& range : plan.ranges) ranges.push_back(&range);
    const auto lattice_start = Clock::now();
    ChunkResult res = run_tasks(n, r, make_tasks(ranges), options);
    report.stats.lattice_ms = ms_since(lattice_start);
    report.stats.lll_calls = res.lll_calls;
    report.stats.exact_fallbacks = res.exact_fallbacks;
    for (auto& p : res.divisors) {
      if (p <= plan.root) report.divisors.push_back(std::move(p));
    }
  }
  if (options.include_one) report.divisors.push_back(1);
  sort_unique(report.divisors);
  report.stats.total_ms = ms_since(start);
  return report;
}

}  // namespace rpdiv
