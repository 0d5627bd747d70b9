#pragma once

#include <cstdint>

namespace synchrolab {

// Splittable counter-based generator: the stream for trial t is a pure
// function of (master seed, t), so serial and partitioned parallel runs
// draw identical values.
class RngStream {
public:
    RngStream(uint64_t master_seed, uint64_t trial) {
        state_ = mix(master_seed ^ mix(trial + 0x9E3779B97F4A7C15ull));
    }

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // uniform on [0, bound), unbiased by rejection
    uint64_t below(uint64_t bound) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return r % bound;
    }

private:
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    uint64_t state_ = 0;
};

} // namespace synchrolab
