#pragma once

// Shared plumbing: tri-state truth values, deterministic budgets and RNG,
// error types, and an ordered parallel map used by the sweep driver.

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace edrlab {

// Three-valued result for budget-bounded searches. Unknown means the search
// ran out of budget (or bound) without deciding; it is never conflated with
// False.
enum class Tri : std::uint8_t { False = 0, True = 1, Unknown = 2 };

inline bool is_true(Tri t) { return t == Tri::True; }
inline bool is_false(Tri t) { return t == Tri::False; }
inline bool is_known(Tri t) { return t != Tri::Unknown; }

inline Tri tri_of(bool b) { return b ? Tri::True : Tri::False; }

inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::True;
}

inline const char* tri_str(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    default: return "unknown";
  }
}

struct Error : std::runtime_error {
  enum class Kind { Parse, Validate, Size, Budget, Precondition, Logic, IO };
  Kind kind;
  Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail(Error::Kind k, const std::string& msg) {
  throw Error(k, msg);
}

// Node budget for exhaustive searches. One tick roughly corresponds to one
// candidate visited. Deterministic: no wall-clock involved.
class Budget {
 public:
  explicit Budget(std::uint64_t ticks = kDefaultTicks) : left_(ticks) {}

  static constexpr std::uint64_t kDefaultTicks = 1ull << 28;

  bool spend(std::uint64_t k = 1) {
    if (hit_) return false;
    if (left_ < k) {
      left_ = 0;
      hit_ = true;
      return false;
    }
    left_ -= k;
    return true;
  }
  bool exhausted() const { return hit_; }
  std::uint64_t left() const { return left_; }

 private:
  std::uint64_t left_;
  bool hit_ = false;
};

// splitmix64: tiny, deterministic across platforms (unlike the std
// distributions, which we therefore avoid in anything serialized).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : s_(seed + 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform-ish draw in [0, n). Modulo bias is irrelevant here; determinism
  // is what matters.
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t s_;
};

// Runs fn(i) for i in [0, n) on up to `threads` workers and returns results
// in index order, so output never depends on the thread count.
template <class T>
std::vector<T> parallel_map_ordered(std::size_t n, int threads,
                                    const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  if (n == 0) return out;
  int workers = threads < 1 ? 1 : threads;
  if (static_cast<std::size_t>(workers) > n) workers = static_cast<int>(n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          std::size_t i = cursor.fetch_add(1);
          if (i >= n) break;
          out[i] = fn(i);
        }
      } catch (...) {
        errs[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace edrlab
