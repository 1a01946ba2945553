#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace prc {

/// SplitMix64 finalizer; used to derive independent stream seeds from a base seed.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for stream `index` under `base`. Streams for distinct indices are
/// independent of each other and of evaluation order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// Seeded random stream with a fully specified output sequence.
///
/// The engine is std::mt19937_64, whose output is fixed by the standard. The
/// standard distributions are implementation-defined, so every variate here is
/// built directly from raw engine output:
///   - uniform01: top 53 bits scaled by 2^-53
///   - uniform_index: rejection sampling on the top bits (unbiased)
///   - normal: Marsaglia polar method, spare variate cached ("polar-v1")
class Rng {
public:
  static constexpr const char* kNormalAlgorithm = "polar-v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform01();
  /// Uniform integer in [0, bound). bound must be > 0.
  std::size_t uniform_index(std::size_t bound);
  double normal(double mean, double sd);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(values[i - 1], values[j]);
    }
  }

  /// k distinct values from [0, n), returned in ascending order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Fresh seed from the system entropy source.
std::uint64_t entropy_seed();

}  // namespace prc
