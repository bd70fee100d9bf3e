#pragma once

#include <cstdint>

namespace imbench {

// Stafford's mix13 finalizer; the avalanche stage of SplitMix64.
constexpr uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Counter-based random stream. Draws are pure functions of
// (key, counter), so a stream can be split into independent
// substreams by index and replayed in any order or thread layout
// with identical results. Same (master seed, stream path) always
// yields the same sequence.
class RngStream {
 public:
  explicit RngStream(uint64_t master_seed, uint64_t stream = 0)
      : key_(derive(mix64(master_seed ^ kSeedSalt), stream)) {}

  // Independent stream addressed by index; substream chains commute
  // with nothing: substream(a).substream(b) != substream(b).substream(a).
  RngStream substream(uint64_t index) const {
    RngStream s(*this);
    s.key_ = derive(key_, index);
    s.counter_ = 0;
    return s;
  }

  uint64_t next_u64() { return u64_at(counter_++); }

  // Uniform in [0, 1).
  double next_unit() { return unit_at(counter_++); }

  // Uniform in [0, bound); bound >= 1. Rejection-free 128-bit trick.
  uint32_t next_below(uint32_t bound) {
    return static_cast<uint32_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Stateless addressed draws: independent of call order.
  uint64_t u64_at(uint64_t index) const {
    return mix64(key_ + index * kGolden);
  }
  double unit_at(uint64_t index) const {
    return static_cast<double>(u64_at(index) >> 11) * 0x1.0p-53;
  }

  uint64_t key() const { return key_; }

 private:
  static constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr uint64_t kSeedSalt = 0x1905f79cull;

  static uint64_t derive(uint64_t key, uint64_t index) {
    return mix64((key ^ (index + 1) * kGolden) + 0x8bb84b93962eacc9ULL);
  }

  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace imbench
