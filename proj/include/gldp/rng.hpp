#pragma once

#include <cstdint>

namespace gldp {

// splitmix64 finalizer.  Full-period permutation of uint64, used both as the
// mixing step of the sequential generator and as a stateless hash.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline double u64_to_unit(uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Sequential generator for sampling paths where draws are consumed in a
// fixed documented order.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0,1).
  double next_unit() { return u64_to_unit(next_u64()); }

  // Uniform on [a,b).
  double next_uniform(double a, double b) { return a + (b - a) * next_unit(); }

  // Uniform integer in [0,n).
  uint64_t next_below(uint64_t n) { return next_u64() % n; }

 private:
  uint64_t state_;
};

// Counter-based draw: a pure function of (seed, counter).  Lets samplers
// assign one independent uniform to each index pair so results do not
// depend on evaluation order or worker count.
inline uint64_t counter_u64(uint64_t seed, uint64_t counter) {
  return mix64(mix64(seed) ^ mix64(counter + 0x632be59bd9b4e019ull));
}

inline double counter_unit(uint64_t seed, uint64_t counter) {
  return u64_to_unit(counter_u64(seed, counter));
}

// Replica seed derivation: replica r of a base seed gets an independent
// stream regardless of how replicas are distributed across workers.
inline uint64_t replica_seed(uint64_t seed, uint64_t replica) {
  return seed ^ mix64(replica + 0x9e3779b97f4a7c15ull);
}

// Two-level derivation packed into one counter.  Chaining replica_seed
// twice is symmetric in the two indices (XOR), so swapped pairs would
// collide; packing keeps distinct (group, member) pairs on distinct
// streams.  Requires group < 2^32 and member < 2^32.
inline uint64_t replica_seed2(uint64_t seed, uint64_t group,
                              uint64_t member) {
  return replica_seed(seed, (group << 32) | (member & 0xffffffffull));
}

}  // namespace gldp
