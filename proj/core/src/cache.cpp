#include "bmads/cache.hpp"

#include <bit>
#include <cstring>

namespace bmads {

std::size_t CoordinateHash::operator()(const Point& x) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ x.size();
  for (double v : x) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    bits ^= bits >> 33;
    bits *= 0xff51afd7ed558ccdULL;
    bits ^= bits >> 33;
    h ^= bits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

bool CoordinateEqual::operator()(const Point& a, const Point& b) const noexcept {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

bool Cache::insert(Evaluation e) {
  auto [it, inserted] = index_.try_emplace(e.x, entries_.size());
  if (!inserted) return false;
  entries_.push_back(std::move(e));
  return true;
}

std::optional<std::size_t> Cache::index_of(std::span<const double> x) const {
  auto it = index_.find(Point(x.begin(), x.end()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Cache::contains(std::span<const double> x) const { return index_of(x).has_value(); }

const Evaluation* Cache::find(std::span<const double> x) const {
  auto i = index_of(x);
  return i ? &entries_[*i] : nullptr;
}

std::optional<std::size_t> Cache::best_index() const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!best ? precedes(entries_[i], VirtualWorst{}) : precedes(entries_[i], entries_[*best]))
      best = i;
  }
  return best;
}

void Cache::clear() {
  entries_.clear();
  index_.clear();
}

}  // namespace bmads
