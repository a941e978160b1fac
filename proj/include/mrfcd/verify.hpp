#pragma once

#include <string>
#include <vector>

namespace mrfcd {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool passed() const { return failures == 0 && checks > 0; }
};

/// lemma1-chain, lemma2, appendix-sandwich, det-identities, chi2-oracles, footnote-039
std::vector<std::string> verify_suite_names();

/// Runs one named suite, or all of them for "all". Unknown names throw ValidationError.
std::vector<SuiteResult> run_verify(const std::string& suite);

}  // namespace mrfcd
