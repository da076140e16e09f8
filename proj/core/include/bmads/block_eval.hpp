#pragma once

#include <atomic>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bmads/cache.hpp"
#include "bmads/types.hpp"

namespace bmads {

/// q candidates submitted together for blackbox evaluation.
struct Block {
  std::vector<Point> candidates;
  std::size_t size() const { return candidates.size(); }
};

/// Splits an ordered candidate list into consecutive blocks of q.
std::vector<Block> split_blocks(const std::vector<Point>& ordered, std::size_t q);

struct BlockCancelled : std::runtime_error {
  BlockCancelled() : std::runtime_error("block evaluation cancelled") {}
};

/// Evaluates every candidate of the block, up to `workers` at a time, and
/// only then inserts the results into the cache in candidate order. The
/// returned evaluations follow candidate order too, so the cache contents do
/// not depend on the worker count or on completion order.
///
/// Candidates already present in the cache are returned from it without a
/// blackbox call. Throws BlockCancelled (leaving the cache untouched) when
/// `cancel` is raised before all evaluations finish.
std::vector<Evaluation> evaluate_block(const Block& block, const Blackbox& blackbox, Cache& cache,
                                       std::size_t workers = 1,
                                       const std::atomic<bool>* cancel = nullptr);

}  // namespace bmads
