#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace frobmu {

inline unsigned effective_workers(unsigned requested) {
  if (requested == 0) requested = 1;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return requested < hw ? requested : hw;
}

// Runs fn(block) for block = 0..nblocks-1 on up to `workers` threads.
// Block boundaries are fixed by the caller, so per-block outputs (and any
// reduction done in block order afterwards) do not depend on the worker count.
template <class Fn>
void run_blocks(std::uint64_t nblocks, unsigned workers, Fn&& fn) {
  workers = effective_workers(workers);
  if (workers <= 1 || nblocks <= 1) {
    for (std::uint64_t b = 0; b < nblocks; ++b) fn(b);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::uint64_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      fn(b);
    }
  };
  std::vector<std::thread> pool;
  unsigned nt = workers < nblocks ? workers : static_cast<unsigned>(nblocks);
  pool.reserve(nt);
  for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace frobmu
