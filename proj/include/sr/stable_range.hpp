#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sr/root_system.hpp"
#include "sr/weyl.hpp"

namespace sr {

// lambda = sum a_k phi_k with nonnegative integer coefficients a_k.
struct HighestWeight {
  std::vector<long long> a;

  static HighestWeight trivial(int rank) {
    return HighestWeight{std::vector<long long>(rank, 0)};
  }
  static HighestWeight fundamental(int rank, int k, long long m = 1);

  bool is_trivial() const;
  bool operator==(const HighestWeight&) const = default;
};

// The vectors phi_k of the datum's kind, in eps-coordinates.
const std::vector<WeightVec>& fundamental_weights(const RootDatum& datum);

// sum a_k phi_k in eps-coordinates. Throws on negative coefficients or a
// length mismatch.
WeightVec highest_weight_vector(const RootDatum& datum, const HighestWeight& hw);

// The definition quantifies over the single stratum W^q; the proofs argue
// over all lengths <= q. We compute both readings and report both.
enum class CMode { Literal, Prefix };

// Result of sweeping one stratum for dominance regularity of sigma(rho+lambda).
struct StratumCheck {
  bool all_ok = true;
  // Failing element with the lowest canonical encoding, plus the smallest
  // index (1-based) of a non-positive simple coefficient of its image.
  std::optional<std::pair<WeylElement, int>> witness;
};

StratumCheck check_stratum(const RootDatum& datum,
                           const std::vector<WeylElement>& stratum,
                           const WeightVec& v, int threads = 1);

// C(G,V). Prefix mode: largest q such that every stratum q' <= q passes
// (early exit, only shallow strata are enumerated). Literal mode: full sweep,
// max q whose own stratum passes.
int c_big(const RootDatum& datum, LengthStratification& strat,
          const HighestWeight& hw, CMode mode, int threads = 1);
int c_big(const RootDatum& datum, const HighestWeight& hw, CMode mode,
          int threads = 1);

// TypeD, n >= 4: returns (n-2, n-1), asserting that the computed C lies in
// the interval and that tau_1...tau_n already kills dominance at the top.
std::pair<int, int> sandwich_check(const RootDatum& datum, const HighestWeight& hw);

// The set of weights (no multiplicities) of the irreducible representation
// with highest weight lambda: all mu in lambda + root lattice whose dominant
// Weyl conjugate lies below lambda. Deterministically ordered.
std::vector<WeightVec> weights_of_irrep(const RootDatum& datum,
                                        const HighestWeight& hw,
                                        std::size_t max_weights = 200'000);

inline constexpr unsigned long long kDefaultCSmallBudget = 10'000'000;

// Borel's original constant: max q <= qmax such that rho - sum(S) + w is
// dominant regular for every q-subset S of the positive roots and every
// weight w of V. Brute-force subset enumeration behind an evaluation budget.
int c_small(const RootDatum& datum, const HighestWeight& hw, int qmax,
            unsigned long long eval_budget = kDefaultCSmallBudget);

// If some sigma in W^q has sigma(rho+lambda) not dominant regular, the
// canonically least such sigma together with the smallest failing simple
// index; otherwise nullopt.
std::optional<std::pair<WeylElement, int>> witness_non_dominant(
    const RootDatum& datum, LengthStratification& strat,
    const HighestWeight& hw, int q);
std::optional<std::pair<WeylElement, int>> witness_non_dominant(
    const RootDatum& datum, const HighestWeight& hw, int q);

struct Witness {
  WeylElement element;
  int failing_index;  // 1-based simple-root index with non-positive coefficient
  int q;              // stratum in which the witness lives
};

struct RangeReport {
  Kind kind;
  int n;
  HighestWeight lambda;
  std::optional<int> C_literal;  // absent when only the prefix sweep ran
  int C_prefix = 0;
  std::optional<int> c_small;
  int rank_bound = 0;         // lower bound rank-1 on m(G(R))
  int guaranteed_degree = 0;  // min(rank_bound, C_prefix)
  std::optional<Witness> witness;
};

struct ReportOptions {
  bool with_literal = true;
  bool with_c_small = false;
  int threads = 1;
  std::size_t byte_budget = kDefaultElementBudgetBytes;
  unsigned long long c_small_budget = kDefaultCSmallBudget;
};

RangeReport range_report(const RootDatum& datum, const HighestWeight& hw,
                         const ReportOptions& opts = {});
RangeReport range_report(const RootDatum& datum, LengthStratification& strat,
                         const HighestWeight& hw, const ReportOptions& opts = {});

// SL_{n+1} remark, reported without asserting the ambiguous phrasing: the
// brute-forced C(A_n, trivial), the "largest integer strictly below n/2"
// reading, and the least m with C(A_n, m*phi_1) = 0 if one exists below the
// scan cap.
struct SlRemark {
  int n;
  int c_trivial;
  int reading_largest_below_half;  // floor((n-1)/2)
  std::optional<int> sym_threshold;
};

SlRemark sl_remark_check(int n, int scan_cap = 50);

}  // namespace sr
