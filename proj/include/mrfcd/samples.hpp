#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mrfcd {

enum class ValueKind { spin, real };

struct Provenance {
  std::uint64_t seed = 0;
  std::string model_id;
  bool operator==(const Provenance&) const = default;
};

/// n x p observation matrix stored row-major.
class SampleSet {
 public:
  SampleSet() = default;
  SampleSet(std::size_t n, std::size_t p, ValueKind kind, std::vector<double> data, Provenance provenance = {});

  std::size_t n() const { return n_; }
  std::size_t p() const { return p_; }
  ValueKind kind() const { return kind_; }
  const Provenance& provenance() const { return provenance_; }
  std::span<const double> data() const { return data_; }

  std::span<const double> row(std::size_t t) const { return {data_.data() + t * p_, p_}; }
  double at(std::size_t t, std::size_t k) const { return data_[t * p_ + k]; }

  /// Columns reordered so that new column k is old column perm[k].
  SampleSet permute_columns(std::span<const int> perm) const;

  bool operator==(const SampleSet&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t p_ = 0;
  ValueKind kind_ = ValueKind::real;
  std::vector<double> data_;
  Provenance provenance_;
};

}  // namespace mrfcd
