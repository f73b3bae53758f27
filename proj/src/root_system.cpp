#include "sr/root_system.hpp"

#include <sstream>
#include <stdexcept>

namespace sr {

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

Rat rat_from_string(std::string_view s) {
  auto bad = [&] { throw std::invalid_argument("malformed rational: " + std::string(s)); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  auto parse_int = [&](std::string_view t) -> Int {
    if (t.empty()) bad();
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) bad();
    for (std::size_t j = i; j < t.size(); ++j)
      if (t[j] < '0' || t[j] > '9') bad();
    return Int(std::string(t));
  };
  if (slash == std::string_view::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den <= 0) bad();
  return Rat(num, den);
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::TypeA: return "A";
    case Kind::TypeC: return "C";
    case Kind::TypeD: return "D";
  }
  return "?";
}

namespace {

void check_dim(const RootDatum& datum, const WeightVec& w) {
  if (w.dim() != datum.dim)
    throw std::invalid_argument("weight dimension mismatch");
}

WeightVec unit_diff(int dim, int i, int j) {  // eps_i - eps_j, 0-based
  WeightVec v{std::vector<Rat>(dim, Rat(0))};
  v.y[i] = 1;
  v.y[j] = -1;
  return v;
}

WeightVec unit_sum(int dim, int i, int j) {  // eps_i + eps_j
  WeightVec v{std::vector<Rat>(dim, Rat(0))};
  v.y[i] = 1;
  v.y[j] = 1;
  return v;
}

std::vector<int> to_int_coords(const WeightVec& w) {
  std::vector<int> out;
  out.reserve(w.y.size());
  for (const auto& c : w.y) {
    if (denominator(c) != 1)
      throw std::logic_error("root with non-integral coordinate");
    out.push_back(static_cast<int>(numerator(c)));
  }
  return out;
}

}  // namespace

WeightVec operator+(const WeightVec& a, const WeightVec& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("weight dimension mismatch");
  WeightVec out = a;
  for (int i = 0; i < a.dim(); ++i) out.y[i] += b.y[i];
  return out;
}

WeightVec operator-(const WeightVec& a, const WeightVec& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("weight dimension mismatch");
  WeightVec out = a;
  for (int i = 0; i < a.dim(); ++i) out.y[i] -= b.y[i];
  return out;
}

WeightVec operator*(const Rat& c, const WeightVec& a) {
  WeightVec out = a;
  for (auto& v : out.y) v *= c;
  return out;
}

RootDatum make_root_datum(Kind kind, int n) {
  switch (kind) {
    case Kind::TypeA:
      if (n < 1) throw std::invalid_argument("TypeA requires rank n >= 1");
      break;
    case Kind::TypeC:
      if (n < 1) throw std::invalid_argument("TypeC requires rank n >= 1");
      break;
    case Kind::TypeD:
      if (n < 2) throw std::invalid_argument("TypeD requires rank n >= 2");
      break;
  }

  RootDatum d;
  d.kind = kind;
  d.rank = n;
  d.dim = (kind == Kind::TypeA) ? n + 1 : n;

  // Simple roots. alpha_i = eps_i - eps_{i+1} for i < n throughout; the last
  // simple root depends on the kind.
  for (int i = 0; i + 1 < n; ++i)
    d.simple_roots.push_back(unit_diff(d.dim, i, i + 1));
  switch (kind) {
    case Kind::TypeA:
      d.simple_roots.push_back(unit_diff(d.dim, n - 1, n));
      break;
    case Kind::TypeC: {
      WeightVec v{std::vector<Rat>(d.dim, Rat(0))};
      v.y[n - 1] = 2;
      d.simple_roots.push_back(std::move(v));
      break;
    }
    case Kind::TypeD:
      d.simple_roots.push_back(unit_sum(d.dim, n - 2, n - 1));
      break;
  }

  // Positive roots.
  switch (kind) {
    case Kind::TypeA:
      for (int i = 0; i < d.dim; ++i)
        for (int j = i + 1; j < d.dim; ++j)
          d.positive_roots.push_back(unit_diff(d.dim, i, j));
      break;
    case Kind::TypeC:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          d.positive_roots.push_back(unit_diff(n, i, j));
          d.positive_roots.push_back(unit_sum(n, i, j));
        }
      for (int i = 0; i < n; ++i) {
        WeightVec v{std::vector<Rat>(n, Rat(0))};
        v.y[i] = 2;
        d.positive_roots.push_back(std::move(v));
      }
      break;
    case Kind::TypeD:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          d.positive_roots.push_back(unit_diff(n, i, j));
          d.positive_roots.push_back(unit_sum(n, i, j));
        }
      break;
  }

  // rho = half the sum of positive roots.
  WeightVec two_rho{std::vector<Rat>(d.dim, Rat(0))};
  for (const auto& beta : d.positive_roots) two_rho = two_rho + beta;
  d.rho = Rat(1, 2) * two_rho;

  // Fundamental weights.
  for (int k = 1; k <= n; ++k) {
    WeightVec phi{std::vector<Rat>(d.dim, Rat(0))};
    switch (kind) {
      case Kind::TypeA: {
        // eps_1+...+eps_k, shifted to the sum-zero representative.
        Rat shift(k, n + 1);
        for (int i = 0; i < d.dim; ++i) phi.y[i] = (i < k ? Rat(1) : Rat(0)) - shift;
        break;
      }
      case Kind::TypeC:
        for (int i = 0; i < k; ++i) phi.y[i] = 1;
        break;
      case Kind::TypeD:
        if (k <= n - 2) {
          for (int i = 0; i < k; ++i) phi.y[i] = 1;
        } else {
          for (int i = 0; i < n; ++i) phi.y[i] = Rat(1, 2);
          if (k == n - 1) phi.y[n - 1] = Rat(-1, 2);
        }
        break;
    }
    d.fundamental_weights.push_back(std::move(phi));
  }

  d.positive_roots_int.reserve(d.positive_roots.size());
  for (const auto& beta : d.positive_roots)
    d.positive_roots_int.push_back(to_int_coords(beta));

  return d;
}

SimpleCoords rho_simple_coeffs(const RootDatum& datum) {
  return eps_to_simple(datum, datum.rho);
}

SimpleCoords eps_to_simple(const RootDatum& datum, const WeightVec& w) {
  check_dim(datum, w);
  const int n = datum.rank;
  std::vector<Rat> y = w.y;

  if (datum.kind == Kind::TypeA) {
    // Normalize to the sum-zero representative of the coset.
    Rat mean(0);
    for (const auto& c : y) mean += c;
    mean /= datum.dim;
    for (auto& c : y) c -= mean;
  }

  std::vector<Rat> x(n, Rat(0));
  Rat prefix(0);
  switch (datum.kind) {
    case Kind::TypeA:
      for (int k = 0; k < n; ++k) {
        prefix += y[k];
        x[k] = prefix;
      }
      break;
    case Kind::TypeC: {
      for (int k = 0; k + 1 < n; ++k) {
        prefix += y[k];
        x[k] = prefix;
      }
      Rat total = prefix + y[n - 1];
      x[n - 1] = total / 2;
      break;
    }
    case Kind::TypeD: {
      for (int k = 0; k < n - 2; ++k) {
        prefix += y[k];
        x[k] = prefix;
      }
      Rat head(0);
      for (int i = 0; i < n - 1; ++i) head += y[i];
      x[n - 2] = (head - y[n - 1]) / 2;
      x[n - 1] = (head + y[n - 1]) / 2;
      break;
    }
  }
  return SimpleCoords{std::move(x)};
}

WeightVec simple_to_eps(const RootDatum& datum, const SimpleCoords& x) {
  if (x.size() != datum.rank)
    throw std::invalid_argument("simple-coefficient length mismatch");
  WeightVec out{std::vector<Rat>(datum.dim, Rat(0))};
  for (int i = 0; i < datum.rank; ++i)
    out = out + (x.x[i] * datum.simple_roots[i]);
  return out;
}

bool is_dominant(const RootDatum& datum, const WeightVec& w) {
  for (const auto& c : eps_to_simple(datum, w).x)
    if (c < 0) return false;
  return true;
}

bool is_dominant_regular(const RootDatum& datum, const WeightVec& w) {
  for (const auto& c : eps_to_simple(datum, w).x)
    if (c <= 0) return false;
  return true;
}

namespace {
std::string join_rats(const std::vector<Rat>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += rat_to_string(v[i]);
  }
  out += ")";
  return out;
}
}  // namespace

std::string to_string(const WeightVec& w) { return join_rats(w.y); }
std::string to_string(const SimpleCoords& x) { return join_rats(x.x); }

std::vector<std::string> to_rational_strings(const WeightVec& w) {
  std::vector<std::string> out;
  out.reserve(w.y.size());
  for (const auto& c : w.y) out.push_back(rat_to_string(c));
  return out;
}

WeightVec weight_from_rational_strings(const std::vector<std::string>& parts) {
  WeightVec out;
  out.y.reserve(parts.size());
  for (const auto& s : parts) out.y.push_back(rat_from_string(s));
  return out;
}

}  // namespace sr
