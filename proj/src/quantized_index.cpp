#include "limroots/detail/quantized_index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "limroots/error.hpp"

namespace limroots::detail {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer folded into a running hash
  v += 0x9e3779b97f4a7c15ULL;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  v ^= v >> 31;
  return (h ^ v) * 0x100000001b3ULL + (h << 7);
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

QuantizedIndex::QuantizedIndex(std::size_t dim, double grid, double verify_tol)
    : dim_(dim), grid_(grid), verify_tol_(verify_tol) {}

std::uint64_t QuantizedIndex::key(std::span<const double> x, double offset) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : x) {
    // Rounded cell index kept as a double: no overflow for large entries.
    double cell = std::nearbyint(v / grid_ + offset) + 0.0;
    h = mix(h, std::bit_cast<std::uint64_t>(cell));
  }
  return h;
}

bool QuantizedIndex::same_cell(std::span<const double> a, std::span<const double> b, double offset) const {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::nearbyint(a[i] / grid_ + offset) != std::nearbyint(b[i] / grid_ + offset)) return false;
  }
  return true;
}

std::optional<std::size_t> QuantizedIndex::find(std::span<const double> x) const {
  const double tol = verify_tol_ * std::max(1.0, max_abs(x));
  auto probe = [&](const std::unordered_multimap<std::uint64_t, std::uint32_t>& map,
                   double offset) -> std::optional<std::size_t> {
    auto [lo, hi] = map.equal_range(key(x, offset));
    for (auto it = lo; it != hi; ++it) {
      auto cand = at(it->second);
      double diff = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) diff = std::max(diff, std::abs(cand[i] - x[i]));
      if (diff <= tol) return it->second;
      if (same_cell(cand, x, offset)) {
        std::ostringstream msg;
        msg << "two distinct tuples share a fingerprint cell (max entry difference " << diff
            << ", grid " << grid_ << "); use a smaller grid";
        throw Error(ErrorKind::FingerprintCollision, msg.str());
      }
    }
    return std::nullopt;
  };
  if (auto id = probe(grid_a_, 0.0)) return id;
  return probe(grid_b_, 0.5);
}

std::size_t QuantizedIndex::insert(std::span<const double> x) {
  const auto id = static_cast<std::uint32_t>(size());
  data_.insert(data_.end(), x.begin(), x.end());
  grid_a_.emplace(key(x, 0.0), id);
  grid_b_.emplace(key(x, 0.5), id);
  return id;
}

}  // namespace limroots::detail
