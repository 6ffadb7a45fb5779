#pragma once

#include <cstdint>
#include <random>

namespace thetak {

/// Deterministic seeded generator. Sampling avoids std::uniform_int_distribution
/// so that streams are identical across standard libraries.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    int64_t below(int64_t bound) {
        return bound <= 1 ? 0 : static_cast<int64_t>(next() % static_cast<uint64_t>(bound));
    }

    int64_t range(int64_t lo, int64_t hi) {  // inclusive
        return lo + below(hi - lo + 1);
    }

    bool chance(int num, int den) { return below(den) < num; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace thetak
