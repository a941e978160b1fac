#include "mrfcd/samples.hpp"

#include "mrfcd/error.hpp"

namespace mrfcd {

SampleSet::SampleSet(std::size_t n, std::size_t p, ValueKind kind, std::vector<double> data, Provenance provenance)
    : n_(n), p_(p), kind_(kind), data_(std::move(data)), provenance_(std::move(provenance)) {
  require(data_.size() == n_ * p_, "sample data size does not match n x p");
  if (kind_ == ValueKind::spin) {
    for (double v : data_) require(v == 1.0 || v == -1.0, "spin-valued sample set contains a value other than +-1");
  }
}

SampleSet SampleSet::permute_columns(std::span<const int> perm) const {
  require(perm.size() == p_, "permutation length does not match p");
  std::vector<double> out(data_.size());
  for (std::size_t t = 0; t < n_; ++t)
    for (std::size_t k = 0; k < p_; ++k) out[t * p_ + k] = data_[t * p_ + static_cast<std::size_t>(perm[k])];
  return {n_, p_, kind_, std::move(out), provenance_};
}

}  // namespace mrfcd
