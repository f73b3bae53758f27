#include "sr/weyl.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sr {

namespace {

std::atomic<bool> g_reflection_fault{false};

// FNV-1a, used as the cache payload checksum.
std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

struct Reader {
  const std::string& data;
  std::size_t pos = 0;

  std::uint8_t u8() {
    if (pos + 1 > data.size()) throw CacheError("truncated cache file");
    return static_cast<std::uint8_t>(data[pos++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  std::string_view bytes(std::size_t k) {
    if (pos + k > data.size()) throw CacheError("truncated cache file");
    std::string_view out(data.data() + pos, k);
    pos += k;
    return out;
  }
};

constexpr char kMagic[4] = {'S', 'R', 'S', 'T'};
constexpr std::uint32_t kFormatVersion = 1;

}  // namespace

void set_reflection_fault(bool enabled) { g_reflection_fault = enabled; }

WeylElement WeylElement::identity(int dim) {
  WeylElement e;
  e.pre.resize(dim);
  e.sign.assign(dim, 1);
  for (int i = 0; i < dim; ++i) e.pre[i] = static_cast<std::uint8_t>(i);
  return e;
}

std::string WeylElement::encode() const {
  const int d = dim();
  std::string out(pre.begin(), pre.end());
  for (int base = 0; base < d; base += 8) {
    unsigned char mask = 0;
    for (int b = 0; b < 8 && base + b < d; ++b)
      if (sign[base + b] < 0) mask |= static_cast<unsigned char>(1u << b);
    out.push_back(static_cast<char>(mask));
  }
  return out;
}

WeylElement WeylElement::decode(std::string_view bytes, int dim) {
  const std::size_t mask_bytes = (static_cast<std::size_t>(dim) + 7) / 8;
  if (bytes.size() != static_cast<std::size_t>(dim) + mask_bytes)
    throw CacheError("bad element encoding size");
  WeylElement e;
  e.pre.assign(bytes.begin(), bytes.begin() + dim);
  e.sign.assign(dim, 1);
  for (int j = 0; j < dim; ++j) {
    unsigned char mask = static_cast<unsigned char>(bytes[dim + j / 8]);
    if (mask & (1u << (j % 8))) e.sign[j] = -1;
  }
  // sanity: pre must be a permutation
  std::vector<bool> hit(dim, false);
  for (int j = 0; j < dim; ++j) {
    if (e.pre[j] >= dim || hit[e.pre[j]]) throw CacheError("bad permutation bytes");
    hit[e.pre[j]] = true;
  }
  return e;
}

WeylElement simple_reflection(const RootDatum& datum, int i) {
  if (i < 1 || i > datum.rank)
    throw std::out_of_range("simple reflection index out of range");
  WeylElement e = WeylElement::identity(datum.dim);
  const int n = datum.rank;
  if (i < n || datum.kind == Kind::TypeA) {
    std::swap(e.pre[i - 1], e.pre[i]);
    return e;
  }
  if (datum.kind == Kind::TypeC) {
    e.sign[n - 1] = g_reflection_fault ? 1 : -1;
    return e;
  }
  // TypeD tau_n: swap the last two coordinates and negate both.
  std::swap(e.pre[n - 2], e.pre[n - 1]);
  e.sign[n - 2] = -1;
  e.sign[n - 1] = g_reflection_fault ? 1 : -1;
  return e;
}

WeightVec apply(const WeylElement& g, const WeightVec& w) {
  if (g.dim() != w.dim()) throw std::invalid_argument("element/weight dimension mismatch");
  WeightVec out{std::vector<Rat>(w.dim())};
  for (int j = 0; j < w.dim(); ++j) {
    out.y[j] = w.y[g.pre[j]];
    if (g.sign[j] < 0) out.y[j] = -out.y[j];
  }
  return out;
}

std::vector<int> apply_int(const WeylElement& g, const std::vector<int>& w) {
  std::vector<int> out(w.size());
  for (std::size_t j = 0; j < w.size(); ++j)
    out[j] = g.sign[j] * w[g.pre[j]];
  return out;
}

WeylElement compose(const WeylElement& g, const WeylElement& h) {
  if (g.dim() != h.dim()) throw std::invalid_argument("element degree mismatch");
  const int d = g.dim();
  WeylElement out;
  out.pre.resize(d);
  out.sign.resize(d);
  for (int j = 0; j < d; ++j) {
    out.pre[j] = h.pre[g.pre[j]];
    out.sign[j] = static_cast<std::int8_t>(g.sign[j] * h.sign[g.pre[j]]);
  }
  return out;
}

int inversion_length(const RootDatum& datum, const WeylElement& g) {
  // For types A, C, D in eps-coordinates a root is positive exactly when its
  // first nonzero coordinate is positive, so no set lookup is needed.
  int count = 0;
  const int d = datum.dim;
  for (const auto& beta : datum.positive_roots_int) {
    for (int j = 0; j < d; ++j) {
      int v = g.sign[j] * beta[g.pre[j]];
      if (v == 0) continue;
      if (v < 0) ++count;
      break;
    }
  }
  return count;
}

LengthStratification::LengthStratification(const RootDatum& datum, std::size_t byte_budget)
    : datum_(&datum), byte_budget_(byte_budget) {
  WeylElement id = WeylElement::identity(datum.dim);
  std::string enc = id.encode();
  bytes_used_ += enc.size();
  seen_.insert(std::move(enc));
  levels_.push_back({std::move(id)});
}

void LengthStratification::extend_one_level() {
  if (finished_) return;
  const int depth = static_cast<int>(levels_.size());
  std::vector<WeylElement> gens;
  for (int i = 1; i <= datum_->rank; ++i)
    gens.push_back(simple_reflection(*datum_, i));

  std::vector<std::pair<std::string, WeylElement>> next;
  for (const auto& e : levels_.back()) {
    for (const auto& t : gens) {
      WeylElement f = compose(e, t);
      std::string enc = f.encode();
      if (seen_.contains(enc)) continue;
      bytes_used_ += enc.size();
      if (bytes_used_ > byte_budget_)
        throw BudgetExceeded("element budget exhausted during stratum enumeration");
      if (inversion_length(*datum_, f) != depth)
        throw InternalInvariantError("BFS depth differs from inversion length");
      seen_.insert(enc);
      next.emplace_back(std::move(enc), std::move(f));
    }
  }
  if (next.empty()) {
    finished_ = true;
    return;
  }
  std::sort(next.begin(), next.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<WeylElement> level;
  level.reserve(next.size());
  for (auto& [enc, e] : next) level.push_back(std::move(e));
  levels_.push_back(std::move(level));
}

const std::vector<WeylElement>& LengthStratification::stratum(int q) {
  if (q < 0) throw std::out_of_range("negative stratum index");
  while (!finished_ && complete_up_to() < q) extend_one_level();
  static const std::vector<WeylElement> kEmpty;
  if (q > complete_up_to()) return kEmpty;
  return levels_[q];
}

std::size_t LengthStratification::total_elements() const {
  std::size_t total = 0;
  for (const auto& level : levels_) total += level.size();
  return total;
}

void LengthStratification::enumerate_all() {
  while (!finished_) extend_one_level();
}

void LengthStratification::save(const std::filesystem::path& path) const {
  std::string payload;
  put_u32(payload, kFormatVersion);
  payload.push_back(static_cast<char>(datum_->kind));
  put_u32(payload, static_cast<std::uint32_t>(datum_->rank));
  put_u32(payload, static_cast<std::uint32_t>(levels_.size()));
  payload.push_back(finished_ ? 1 : 0);
  for (const auto& level : levels_) {
    put_u64(payload, level.size());
    for (const auto& e : level) payload += e.encode();
  }

  std::string out(kMagic, 4);
  out += payload;
  put_u64(out, fnv1a(payload));

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw CacheError("cannot open cache file for writing: " + tmp.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw CacheError("short write to cache file: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

LengthStratification LengthStratification::load(const std::filesystem::path& path,
                                                const RootDatum& datum,
                                                std::size_t byte_budget) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CacheError("cannot open cache file: " + path.string());
  std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

  if (data.size() < 4 + 8 || std::memcmp(data.data(), kMagic, 4) != 0)
    throw CacheError("bad cache magic");
  std::string payload = data.substr(4, data.size() - 4 - 8);
  Reader trailer{data, data.size() - 8};
  if (trailer.u64() != fnv1a(payload)) throw CacheError("cache checksum mismatch");

  Reader r{payload};
  if (r.u32() != kFormatVersion) throw CacheError("unsupported cache format version");
  Kind kind = static_cast<Kind>(r.u8());
  int rank = static_cast<int>(r.u32());
  if (kind != datum.kind || rank != datum.rank)
    throw CacheError("cache file is for a different group");
  std::uint32_t level_count = r.u32();
  bool finished = r.u8() != 0;

  LengthStratification strat(datum, byte_budget);
  const std::size_t enc_size =
      static_cast<std::size_t>(datum.dim) + (static_cast<std::size_t>(datum.dim) + 7) / 8;
  for (std::uint32_t q = 0; q < level_count; ++q) {
    std::uint64_t count = r.u64();
    if (q == 0 && count != 1) throw CacheError("stratum 0 must have one element");
    std::vector<WeylElement> level;
    level.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      WeylElement e = WeylElement::decode(r.bytes(enc_size), datum.dim);
      if (q > 0) {
        std::string enc = e.encode();
        if (strat.seen_.contains(enc)) throw CacheError("duplicate cache element");
        strat.bytes_used_ += enc.size();
        if (strat.bytes_used_ > byte_budget)
          throw BudgetExceeded("element budget exhausted while loading cache");
        strat.seen_.insert(std::move(enc));
        level.push_back(std::move(e));
      } else if (!(e == WeylElement::identity(datum.dim))) {
        throw CacheError("stratum 0 must be the identity");
      }
    }
    if (q > 0) strat.levels_.push_back(std::move(level));
  }
  if (r.pos != payload.size()) throw CacheError("trailing bytes in cache file");
  strat.finished_ = finished;
  return strat;
}

LengthStratification enumerate_strata(const RootDatum& datum, int qmax,
                                      std::size_t byte_budget) {
  if (qmax < 0) throw std::invalid_argument("qmax must be nonnegative");
  LengthStratification strat(datum, byte_budget);
  strat.stratum(qmax);
  return strat;
}

}  // namespace sr
