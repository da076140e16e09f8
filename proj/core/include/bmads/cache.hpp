#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "bmads/types.hpp"

namespace bmads {

/// Hash of the exact bit patterns of a coordinate vector.
struct CoordinateHash {
  std::size_t operator()(const Point& x) const noexcept;
};

/// Bitwise equality: -0.0 and 0.0 differ, identical NaN payloads match.
struct CoordinateEqual {
  bool operator()(const Point& a, const Point& b) const noexcept;
};

/// Insertion-ordered set of evaluations keyed by exact coordinates.
///
/// Const member functions may be called concurrently. Inserting requires
/// exclusive access; the engine only inserts at block boundaries.
class Cache {
 public:
  /// Returns false (and leaves the cache untouched) when x is already present.
  bool insert(Evaluation e);

  bool contains(std::span<const double> x) const;
  const Evaluation* find(std::span<const double> x) const;
  std::optional<std::size_t> index_of(std::span<const double> x) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Evaluation& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Evaluation>& entries() const { return entries_; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Index of the best entry under precedes; ties go to the earliest insertion.
  std::optional<std::size_t> best_index() const;

  void clear();

 private:
  std::vector<Evaluation> entries_;
  std::unordered_map<Point, std::size_t, CoordinateHash, CoordinateEqual> index_;
};

}  // namespace bmads
