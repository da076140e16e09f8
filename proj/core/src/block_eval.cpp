#include "bmads/block_eval.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <thread>

namespace bmads {

std::vector<Block> split_blocks(const std::vector<Point>& ordered, std::size_t q) {
  std::vector<Block> blocks;
  if (q == 0) q = 1;
  for (std::size_t start = 0; start < ordered.size(); start += q) {
    Block b;
    const std::size_t stop = std::min(ordered.size(), start + q);
    b.candidates.assign(ordered.begin() + static_cast<std::ptrdiff_t>(start),
                        ordered.begin() + static_cast<std::ptrdiff_t>(stop));
    blocks.push_back(std::move(b));
  }
  return blocks;
}

std::vector<Evaluation> evaluate_block(const Block& block, const Blackbox& blackbox, Cache& cache,
                                       std::size_t workers, const std::atomic<bool>* cancel) {
  const std::size_t q = block.size();
  std::vector<std::optional<Evaluation>> results(q);
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < q; ++i) {
    if (const Evaluation* hit = cache.find(block.candidates[i]))
      results[i] = *hit;
    else
      pending.push_back(i);
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> cancelled{false};

  auto work = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= pending.size()) return;
      if (cancel && cancel->load()) {
        cancelled = true;
        return;
      }
      const std::size_t i = pending[k];
      const Point& x = block.candidates[i];
      std::optional<BlackboxOutput> out;
      try {
        out = blackbox(x);
      } catch (...) {
        out.reset();  // a throwing blackbox counts as a failed evaluation
      }
      results[i] = make_evaluation(x, out, EvalTag::true_eval);
    }
  };

  const std::size_t threads = std::min(std::max<std::size_t>(workers, 1), pending.size());
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (cancelled) throw BlockCancelled();

  std::vector<Evaluation> out;
  out.reserve(q);
  for (auto& r : results) {
    cache.insert(*r);
    out.push_back(std::move(*r));
  }
  return out;
}

}  // namespace bmads
