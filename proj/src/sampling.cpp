#include "mrfcd/sampling.hpp"

#include "mrfcd/error.hpp"

namespace mrfcd {

EnsembleSampler::EnsembleSampler(const ChangeEnsemble& e) : ensemble_(&e), size_(e.size()) {
  if (e.is_ising()) {
    ising_.reserve(size_ + 1);
    ising_.emplace_back(e.ising().null_model);
    for (const auto& q : e.ising().alternatives) ising_.emplace_back(q);
  }
}

SampleSet EnsembleSampler::null(std::size_t n, Philox4x32& rng) const {
  if (!ising_.empty()) return ising_.front().sample(n, rng);
  return gaussian_sample(ensemble_->gaussian().null_model, n, rng);
}

SampleSet EnsembleSampler::alternative(std::size_t index, std::size_t n, Philox4x32& rng) const {
  require(index < size_, "alternative index out of range");
  if (!ising_.empty()) return ising_[index + 1].sample(n, rng);
  return gaussian_sample(ensemble_->gaussian().alternatives[index], n, rng);
}

}  // namespace mrfcd
