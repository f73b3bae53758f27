#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include "sr/errors.hpp"
#include "sr/root_system.hpp"

namespace sr {

// A (signed) permutation of the eps-coordinates. The action convention is
//   apply(g, w)[j] = sign[j] * w[pre[j]],
// i.e. pre is the inverse permutation in one-line notation. TypeD elements
// carry an even number of -1 signs, TypeA none.
struct WeylElement {
  std::vector<std::uint8_t> pre;
  std::vector<std::int8_t> sign;

  static WeylElement identity(int dim);

  int dim() const { return static_cast<int>(pre.size()); }

  // Canonical byte encoding: pre in one-line notation, then the sign bitmask
  // little-endian. Used for hashing, dedup, tie-breaking and the cache format.
  std::string encode() const;
  static WeylElement decode(std::string_view bytes, int dim);

  bool operator==(const WeylElement&) const = default;
};

// Test-only hook: mis-wires the sign pattern of the last simple reflection for
// types C and D, so that downstream verification must fail. Never set in
// production code paths.
void set_reflection_fault(bool enabled);

// The reflection tau_i, 1 <= i <= rank. For i < n it swaps coordinates i and
// i+1; TypeD tau_n swaps the last two coordinates and negates both, TypeC
// tau_n negates the last coordinate. Throws std::out_of_range.
WeylElement simple_reflection(const RootDatum& datum, int i);

WeightVec apply(const WeylElement& g, const WeightVec& w);
std::vector<int> apply_int(const WeylElement& g, const std::vector<int>& w);

// apply(compose(g, h), w) == apply(g, apply(h, w)). Throws on mismatched
// degree.
WeylElement compose(const WeylElement& g, const WeylElement& h);

// |{beta in Phi+ : g(beta) not in Phi+}|. Computed directly from the roots;
// independent of any word/BFS machinery, so it doubles as the length oracle.
int inversion_length(const RootDatum& datum, const WeylElement& g);

inline constexpr std::size_t kDefaultElementBudgetBytes = 100'000'000;

// The strata W^q, built lazily by length-synchronized BFS over right
// multiplication by the simple reflections. Each stratum is sorted by
// canonical encoding, so contents are deterministic. The postcondition
// BFS depth == inversion_length is checked for every enumerated element.
class LengthStratification {
 public:
  LengthStratification(const RootDatum& datum,
                       std::size_t byte_budget = kDefaultElementBudgetBytes);

  const RootDatum& datum() const { return *datum_; }

  // Extends the BFS so that stratum q is complete, then returns it. Returns
  // an empty stratum when q exceeds the longest element. Throws
  // BudgetExceeded if the element budget would be exceeded.
  const std::vector<WeylElement>& stratum(int q);

  // Highest q whose stratum is already complete.
  int complete_up_to() const { return static_cast<int>(levels_.size()) - 1; }

  // True once the whole group has been enumerated.
  bool finished() const { return finished_; }

  std::size_t total_elements() const;

  // Runs the BFS to exhaustion (or budget).
  void enumerate_all();

  // Versioned binary cache with a trailing checksum; written atomically
  // (temp file + rename). Bit-exact across runs and platforms.
  void save(const std::filesystem::path& path) const;
  static LengthStratification load(const std::filesystem::path& path,
                                   const RootDatum& datum,
                                   std::size_t byte_budget = kDefaultElementBudgetBytes);

 private:
  void extend_one_level();

  const RootDatum* datum_;  // must outlive the stratification
  std::vector<std::vector<WeylElement>> levels_;
  std::unordered_set<std::string> seen_;
  std::size_t bytes_used_ = 0;
  std::size_t byte_budget_;
  bool finished_ = false;
};

// Eagerly enumerates strata 0..qmax.
LengthStratification enumerate_strata(const RootDatum& datum, int qmax,
                                      std::size_t byte_budget = kDefaultElementBudgetBytes);

}  // namespace sr
