#pragma once

#include <string>
#include <vector>

#include "sr/rational.hpp"

namespace sr {

// Split classical types we support. TypeA rank n means SL_{n+1}: its weights
// live in an (n+1)-dimensional ambient eps-space with the sum-zero convention.
enum class Kind { TypeA, TypeC, TypeD };

const char* kind_name(Kind k);  // "A" / "C" / "D"

// Coordinates y_i against the standard functionals eps_1,...,eps_dim on the
// Cartan dual. dim equals the rank for types C and D, rank+1 for type A.
struct WeightVec {
  std::vector<Rat> y;

  WeightVec() = default;
  explicit WeightVec(std::vector<Rat> coords) : y(std::move(coords)) {}

  int dim() const { return static_cast<int>(y.size()); }
  bool operator==(const WeightVec&) const = default;
};

// Coefficients x_k against the simple roots alpha_1,...,alpha_rank.
struct SimpleCoords {
  std::vector<Rat> x;

  SimpleCoords() = default;
  explicit SimpleCoords(std::vector<Rat> coeffs) : x(std::move(coeffs)) {}

  int size() const { return static_cast<int>(x.size()); }
  bool operator==(const SimpleCoords&) const = default;
};

WeightVec operator+(const WeightVec& a, const WeightVec& b);
WeightVec operator-(const WeightVec& a, const WeightVec& b);
WeightVec operator*(const Rat& c, const WeightVec& a);

// Immutable after construction; all operations on it are pure functions.
struct RootDatum {
  Kind kind;
  int rank;  // n
  int dim;   // ambient eps-dimension: rank for C/D, rank+1 for A
  std::vector<WeightVec> simple_roots;
  std::vector<WeightVec> positive_roots;
  WeightVec rho;  // half the sum of the positive roots
  std::vector<WeightVec> fundamental_weights;

  // Positive roots again, as small integer eps-coordinates (they are always
  // integral); used by the inversion-count hot path.
  std::vector<std::vector<int>> positive_roots_int;
};

// TypeD needs n >= 2, TypeC n >= 1, TypeA n >= 1.
// Throws std::invalid_argument for a rank outside the kind's range.
RootDatum make_root_datum(Kind kind, int n);

// The coefficients r_i of rho against the simple roots.
SimpleCoords rho_simple_coeffs(const RootDatum& datum);

// Solve sum x_i alpha_i = w. For TypeA the input is first normalized to the
// sum-zero representative of its coset. Exact; throws on dimension mismatch.
SimpleCoords eps_to_simple(const RootDatum& datum, const WeightVec& w);

// Inverse of eps_to_simple (onto sum-zero vectors for TypeA).
WeightVec simple_to_eps(const RootDatum& datum, const SimpleCoords& x);

// Dominant: every simple-basis coefficient >= 0. Regular: all > 0.
bool is_dominant(const RootDatum& datum, const WeightVec& w);
bool is_dominant_regular(const RootDatum& datum, const WeightVec& w);

// "(3, 1/2, -1)" style rendering, used by reports and the CLI.
std::string to_string(const WeightVec& w);
std::string to_string(const SimpleCoords& x);

// Exact rational strings "p" / "p/q", the serialization the CLI puts in JSON
// arrays.
std::vector<std::string> to_rational_strings(const WeightVec& w);
WeightVec weight_from_rational_strings(const std::vector<std::string>& parts);

}  // namespace sr
