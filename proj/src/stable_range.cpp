#include "sr/stable_range.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>

namespace sr {

HighestWeight HighestWeight::fundamental(int rank, int k, long long m) {
  if (k < 1 || k > rank) throw std::out_of_range("fundamental weight index out of range");
  HighestWeight hw{std::vector<long long>(rank, 0)};
  hw.a[k - 1] = m;
  return hw;
}

bool HighestWeight::is_trivial() const {
  return std::all_of(a.begin(), a.end(), [](long long v) { return v == 0; });
}

const std::vector<WeightVec>& fundamental_weights(const RootDatum& datum) {
  return datum.fundamental_weights;
}

WeightVec highest_weight_vector(const RootDatum& datum, const HighestWeight& hw) {
  if (static_cast<int>(hw.a.size()) != datum.rank)
    throw std::invalid_argument("highest-weight coefficient length mismatch");
  WeightVec out{std::vector<Rat>(datum.dim, Rat(0))};
  for (int k = 0; k < datum.rank; ++k) {
    if (hw.a[k] < 0) throw std::invalid_argument("negative highest-weight coefficient");
    if (hw.a[k] != 0)
      out = out + (Rat(hw.a[k]) * datum.fundamental_weights[k]);
  }
  return out;
}

namespace {

// First 1-based index of a non-positive simple coefficient, or 0 when
// dominant regular.
int first_failing_index(const RootDatum& datum, const WeightVec& w) {
  SimpleCoords x = eps_to_simple(datum, w);
  for (int i = 0; i < x.size(); ++i)
    if (x.x[i] <= 0) return i + 1;
  return 0;
}

StratumCheck check_range(const RootDatum& datum, const std::vector<WeylElement>& stratum,
                         std::size_t lo, std::size_t hi, const WeightVec& v) {
  StratumCheck out;
  for (std::size_t i = lo; i < hi; ++i) {
    int fail = first_failing_index(datum, apply(stratum[i], v));
    if (fail != 0) {
      out.all_ok = false;
      out.witness = {stratum[i], fail};  // stratum is encoding-sorted, first hit is minimal
      break;
    }
  }
  return out;
}

}  // namespace

StratumCheck check_stratum(const RootDatum& datum, const std::vector<WeylElement>& stratum,
                           const WeightVec& v, int threads) {
  if (threads <= 1 || stratum.size() < 64)
    return check_range(datum, stratum, 0, stratum.size(), v);

  const std::size_t chunks = static_cast<std::size_t>(threads);
  std::vector<StratumCheck> partial(chunks);
  std::vector<std::thread> pool;
  const std::size_t step = (stratum.size() + chunks - 1) / chunks;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t lo = c * step, hi = std::min(stratum.size(), lo + step);
    if (lo >= hi) break;
    pool.emplace_back([&, c, lo, hi] { partial[c] = check_range(datum, stratum, lo, hi, v); });
  }
  for (auto& t : pool) t.join();

  // Deterministic reduction: the stratum is sorted by canonical encoding, so
  // the first failing chunk holds the canonical-minimal witness.
  for (const auto& p : partial)
    if (!p.all_ok) return p;
  return {};
}

int c_big(const RootDatum& datum, LengthStratification& strat,
          const HighestWeight& hw, CMode mode, int threads) {
  const WeightVec v = datum.rho + highest_weight_vector(datum, hw);

  if (mode == CMode::Prefix) {
    for (int q = 0;; ++q) {
      const auto& level = strat.stratum(q);
      if (level.empty() && strat.finished()) return q - 1;
      if (!check_stratum(datum, level, v, threads).all_ok) return q - 1;
    }
  }

  strat.enumerate_all();
  int best = -1;
  for (int q = 0; q <= strat.complete_up_to(); ++q)
    if (check_stratum(datum, strat.stratum(q), v, threads).all_ok) best = q;
  return best;
}

int c_big(const RootDatum& datum, const HighestWeight& hw, CMode mode, int threads) {
  LengthStratification strat(datum);
  return c_big(datum, strat, hw, mode, threads);
}

std::pair<int, int> sandwich_check(const RootDatum& datum, const HighestWeight& hw) {
  if (datum.kind != Kind::TypeD || datum.rank < 4)
    throw std::invalid_argument("sandwich_check requires TypeD with n >= 4");
  const int n = datum.rank;

  // tau_1...tau_n sends rho+lambda outside the open dominant cone.
  WeylElement sigma = simple_reflection(datum, 1);
  for (int i = 2; i <= n; ++i) sigma = compose(sigma, simple_reflection(datum, i));
  const WeightVec v = datum.rho + highest_weight_vector(datum, hw);
  if (is_dominant_regular(datum, apply(sigma, v)))
    throw InternalInvariantError("upper-bound witness unexpectedly dominant regular");

  LengthStratification strat(datum);
  int c = c_big(datum, strat, hw, CMode::Prefix);
  if (c < n - 2 || c > n - 1)
    throw InternalInvariantError("C outside the [n-2, n-1] sandwich");
  return {n - 2, n - 1};
}

namespace {

// Dominant representative of the Weyl orbit, directly from the signed
// permutation description of W.
WeightVec dominant_conjugate(const RootDatum& datum, const WeightVec& w) {
  std::vector<Rat> y = w.y;
  switch (datum.kind) {
    case Kind::TypeA:
      std::sort(y.begin(), y.end(), std::greater<>());
      break;
    case Kind::TypeC:
      for (auto& c : y)
        if (c < 0) c = -c;
      std::sort(y.begin(), y.end(), std::greater<>());
      break;
    case Kind::TypeD: {
      int negatives = 0;
      bool has_zero = false;
      for (auto& c : y) {
        if (c < 0) {
          c = -c;
          ++negatives;
        } else if (c == 0) {
          has_zero = true;
        }
      }
      std::sort(y.begin(), y.end(), std::greater<>());
      // Only even sign changes are available; a zero coordinate absorbs the
      // parity, otherwise the smallest entry keeps the leftover minus sign.
      if (!has_zero && negatives % 2 == 1) y.back() = -y.back();
      break;
    }
  }
  return WeightVec{std::move(y)};
}

std::string weight_key(const WeightVec& w) {
  std::string key;
  for (const auto& c : w.y) {
    key += rat_to_string(c);
    key += ',';
  }
  return key;
}

}  // namespace

std::vector<WeightVec> weights_of_irrep(const RootDatum& datum, const HighestWeight& hw,
                                        std::size_t max_weights) {
  const WeightVec lambda = highest_weight_vector(datum, hw);

  // mu belongs to the weight set iff its dominant conjugate mu+ satisfies
  // lambda - mu+ >= 0 in the simple basis; BFS downward by simple roots
  // reaches every such mu.
  auto member = [&](const WeightVec& mu) {
    SimpleCoords diff = eps_to_simple(datum, lambda - dominant_conjugate(datum, mu));
    for (const auto& c : diff.x)
      if (c < 0) return false;
    return true;
  };

  std::map<std::string, WeightVec> found;
  std::deque<WeightVec> frontier;
  found.emplace(weight_key(lambda), lambda);
  frontier.push_back(lambda);
  while (!frontier.empty()) {
    WeightVec mu = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& alpha : datum.simple_roots) {
      WeightVec nu = mu - alpha;
      std::string key = weight_key(nu);
      if (found.contains(key) || !member(nu)) continue;
      if (found.size() >= max_weights)
        throw BudgetExceeded("weight-set budget exhausted");
      found.emplace(std::move(key), nu);
      frontier.push_back(std::move(nu));
    }
  }

  std::vector<WeightVec> out;
  out.reserve(found.size());
  for (auto& [key, w] : found) out.push_back(std::move(w));
  return out;
}

namespace {

unsigned long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  unsigned long long r = 1;
  k = std::min(k, n - k);
  for (int i = 1; i <= k; ++i) {
    // n <= ~64 here, no overflow at the scales the budget admits
    r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
  }
  return r;
}

// All q-subset sums of the positive roots, fed to the callback; returns false
// as soon as the callback does.
bool for_each_subset_sum(const RootDatum& datum, int q,
                         const std::function<bool(const WeightVec&)>& cb) {
  const int m = static_cast<int>(datum.positive_roots.size());
  std::vector<WeightVec> stack_sums;
  WeightVec zero{std::vector<Rat>(datum.dim, Rat(0))};

  std::function<bool(int, int, const WeightVec&)> rec =
      [&](int start, int remaining, const WeightVec& sum) -> bool {
    if (remaining == 0) return cb(sum);
    for (int i = start; i <= m - remaining; ++i)
      if (!rec(i + 1, remaining - 1, sum + datum.positive_roots[i])) return false;
    return true;
  };
  return rec(0, q, zero);
}

}  // namespace

int c_small(const RootDatum& datum, const HighestWeight& hw, int qmax,
            unsigned long long eval_budget) {
  const int m = static_cast<int>(datum.positive_roots.size());
  qmax = std::min(qmax, m);
  std::vector<WeightVec> weights = weights_of_irrep(datum, hw);

  int best = -1;
  for (int q = 0; q <= qmax; ++q) {
    unsigned long long evals = binomial(m, q) * weights.size();
    if (evals > eval_budget)
      throw BudgetExceeded("c_small combinatorial budget exhausted");
    bool ok = for_each_subset_sum(datum, q, [&](const WeightVec& sum) {
      WeightVec base = datum.rho - sum;
      for (const auto& w : weights)
        if (!is_dominant_regular(datum, base + w)) return false;
      return true;
    });
    if (ok) best = q;
  }
  return best;
}

std::optional<std::pair<WeylElement, int>> witness_non_dominant(
    const RootDatum& datum, LengthStratification& strat,
    const HighestWeight& hw, int q) {
  const WeightVec v = datum.rho + highest_weight_vector(datum, hw);
  StratumCheck check = check_stratum(datum, strat.stratum(q), v);
  return check.witness;
}

std::optional<std::pair<WeylElement, int>> witness_non_dominant(
    const RootDatum& datum, const HighestWeight& hw, int q) {
  LengthStratification strat(datum);
  return witness_non_dominant(datum, strat, hw, q);
}

RangeReport range_report(const RootDatum& datum, LengthStratification& strat,
                         const HighestWeight& hw, const ReportOptions& opts) {
  RangeReport r;
  r.kind = datum.kind;
  r.n = datum.rank;
  r.lambda = hw;
  r.rank_bound = datum.rank - 1;
  r.C_prefix = c_big(datum, strat, hw, CMode::Prefix, opts.threads);
  if (opts.with_literal)
    r.C_literal = c_big(datum, strat, hw, CMode::Literal, opts.threads);
  if (opts.with_c_small)
    r.c_small = c_small(datum, hw, static_cast<int>(datum.positive_roots.size()),
                        opts.c_small_budget);
  r.guaranteed_degree = std::min(r.rank_bound, r.C_prefix);

  const int wq = r.C_prefix + 1;
  if (!strat.stratum(wq).empty()) {
    if (auto w = witness_non_dominant(datum, strat, hw, wq))
      r.witness = Witness{w->first, w->second, wq};
  }
  return r;
}

RangeReport range_report(const RootDatum& datum, const HighestWeight& hw,
                         const ReportOptions& opts) {
  LengthStratification strat(datum, opts.byte_budget);
  return range_report(datum, strat, hw, opts);
}

SlRemark sl_remark_check(int n, int scan_cap) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("sl_remark_check is guarded to n <= 6");
  RootDatum datum = make_root_datum(Kind::TypeA, n);
  LengthStratification strat(datum);

  SlRemark out;
  out.n = n;
  out.c_trivial = c_big(datum, strat, HighestWeight::trivial(n), CMode::Literal);
  out.reading_largest_below_half = (n - 1) / 2;
  for (int m = 1; m <= scan_cap; ++m) {
    HighestWeight hw = HighestWeight::fundamental(n, 1, m);
    if (c_big(datum, strat, hw, CMode::Prefix) == 0) {
      out.sym_threshold = m;
      break;
    }
  }
  return out;
}

}  // namespace sr
