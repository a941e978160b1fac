#pragma once

#include <ostream>

#include "mrfcd/config.hpp"

namespace mrfcd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

/// Executes one validated command. Files are written atomically; with no
/// --out the primary format goes to `out`. Returns the process exit code.
int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

std::string bound_csv(const std::vector<BoundReport>& reports);

}  // namespace mrfcd
