#include "dlp/parallel.hpp"

#include <cstdlib>
#include <string>

namespace dlp {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t index) {
  return mix64(mix64(mix64(master) ^ tag) ^ index);
}

Rng stream(std::uint64_t master, std::uint64_t tag, std::uint64_t index) {
  std::uint64_t s = stream_seed(master, tag, index);
  std::seed_seq seq{std::uint32_t(s), std::uint32_t(s >> 32)};
  return Rng(seq);
}

std::uint64_t tag_of(const char* name) {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (; *name; ++name) h = (h ^ static_cast<unsigned char>(*name)) * 0x100000001b3ULL;
  return h;
}

int thread_count() {
  if (const char* env = std::getenv("DLP_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace dlp
