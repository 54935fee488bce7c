#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace irsim {

// Counter-based Philox4x32-10 block cipher. Output is a pure function of
// (key, counter), so any worker can jump to any point of any stream without
// shared state; equal inputs give equal outputs on every platform.
namespace philox {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline Counter encrypt(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
    const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

}  // namespace philox

// One logical random stream addressed by (seed, stream_id). The 128-bit
// Philox counter is split as [position | stream_id], so distinct stream ids
// never overlap and a stream can emit 2^64 blocks. Copies replay identically.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint32_t next_u32() {
    if (have_ == 0) refill();
    return block_[4 - have_--];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  // Uniform on (0, 1]: 53-bit mantissa, never returns 0 so log() is safe.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Circularly-symmetric complex Gaussian with E|h|^2 = variance, via the
  // exact polar transform (|h|^2 exponential, phase uniform).
  std::complex<double> next_cnormal(double variance) {
    const double r = std::sqrt(-variance * std::log(next_unit()));
    const double phi = 2.0 * std::numbers::pi * next_unit();
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  // Uniform phase on [0, 2*pi).
  double next_phase() {
    return 2.0 * std::numbers::pi *
           (static_cast<double>(next_u64() >> 11) * 0x1.0p-53);
  }

 private:
  void refill() {
    const philox::Counter ctr = {
        static_cast<std::uint32_t>(pos_), static_cast<std::uint32_t>(pos_ >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    const philox::Key key = {static_cast<std::uint32_t>(seed_),
                             static_cast<std::uint32_t>(seed_ >> 32)};
    block_ = philox::encrypt(ctr, key);
    ++pos_;
    have_ = 4;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t pos_ = 0;
  philox::Counter block_ = {};
  int have_ = 0;
};

// Stream-id namespace tags. Ids pack (tag : 8 | a : 24 | b : 32), which is
// collision-free for a < 2^24 and b < 2^32; the simulation engine validates
// those bounds on its inputs.
enum class StreamTag : std::uint64_t {
  kFadingX = 1,
  kFadingY = 2,
  kPhases = 3,
  kOffsets = 4,
  kUePlacement = 5,
  kScratch = 6,
};

inline std::uint64_t pack_stream_id(StreamTag tag, std::uint64_t a,
                                    std::uint64_t b) {
  return (static_cast<std::uint64_t>(tag) << 56) | ((a & 0xFFFFFFull) << 32) |
         (b & 0xFFFFFFFFull);
}

inline RngStream make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t a,
                             std::uint64_t b) {
  return RngStream(seed, pack_stream_id(tag, a, b));
}

}  // namespace irsim
