#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace gemb {

// Splits [0, total) into contiguous shards, runs fn(lo, hi) -> vector<T> on
// up to `threads` workers, and concatenates the results in shard order, so
// the merged output is byte-identical for every worker count.
template <typename T, typename Fn>
std::vector<T> sharded_collect(std::uint64_t total, int threads, Fn fn) {
  if (threads < 1) threads = 1;
  const std::uint64_t shards =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), std::max<std::uint64_t>(total, 1));
  std::vector<std::vector<T>> parts(static_cast<std::size_t>(shards));
  if (shards == 1) {
    parts[0] = fn(std::uint64_t{0}, total);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(shards));
    for (std::uint64_t s = 0; s < shards; ++s) {
      const std::uint64_t lo = total / shards * s + std::min(s, total % shards);
      const std::uint64_t hi = total / shards * (s + 1) + std::min(s + 1, total % shards);
      pool.emplace_back([&parts, s, lo, hi, &fn] { parts[s] = fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
  }
  std::size_t n = 0;
  for (const auto& p : parts) n += p.size();
  std::vector<T> out;
  out.reserve(n);
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace gemb
