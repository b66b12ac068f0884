#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace limroots::detail {

/// Exact-match index over fixed-length real tuples.
///
/// Tuples are rounded to a grid of spacing `grid` and the rounded tuple is
/// hashed. Every tuple is filed under two grids offset by half a cell, so two
/// copies of the same value that straddle a cell boundary in one grid still
/// meet in the other. Candidates are confirmed entrywise at
/// `verify_tol * max(1, |x|_max)`. A candidate that shares a full rounded tuple
/// but fails confirmation is a fingerprint collision and raises
/// ErrorKind::FingerprintCollision.
class QuantizedIndex {
 public:
  QuantizedIndex(std::size_t dim, double grid, double verify_tol);

  std::optional<std::size_t> find(std::span<const double> x) const;

  /// Appends unconditionally and returns the new id.
  std::size_t insert(std::span<const double> x);

  std::size_t size() const { return data_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> at(std::size_t id) const { return {data_.data() + id * dim_, dim_}; }

 private:
  std::uint64_t key(std::span<const double> x, double offset) const;
  bool same_cell(std::span<const double> a, std::span<const double> b, double offset) const;

  std::size_t dim_;
  double grid_;
  double verify_tol_;
  std::vector<double> data_;
  std::unordered_multimap<std::uint64_t, std::uint32_t> grid_a_;
  std::unordered_multimap<std::uint64_t, std::uint32_t> grid_b_;
};

}  // namespace limroots::detail
