#pragma once

#include <cstdint>
#include <vector>

#include "mrfcd/ensembles.hpp"
#include "mrfcd/rng.hpp"

namespace mrfcd {

/// Prebuilt exact samplers for the null and every alternative of an ensemble.
class EnsembleSampler {
 public:
  explicit EnsembleSampler(const ChangeEnsemble& e);

  std::size_t alternatives() const { return size_; }
  SampleSet null(std::size_t n, Philox4x32& rng) const;
  SampleSet alternative(std::size_t index, std::size_t n, Philox4x32& rng) const;

 private:
  const ChangeEnsemble* ensemble_;
  std::size_t size_ = 0;
  std::vector<IsingSampler> ising_;  // [0] null, [1 + k] alternative k
};

/// Stream ids used by the simulators: trial t draws its null dataset from
/// stream 2t and its alternative (index and data) from stream 2t + 1.
inline std::uint64_t null_stream(std::uint64_t trial) { return 2 * trial; }
inline std::uint64_t alternative_stream(std::uint64_t trial) { return 2 * trial + 1; }

}  // namespace mrfcd
