#pragma once

#include <cstddef>
#include <functional>

namespace sasaki {

inline constexpr const char* kWorkerEnvVar = "SASAKI_WORKERS";

// Worker count from SASAKI_WORKERS, else hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, n). Each index writes only its own output slot, so results do not
// depend on scheduling. The exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int workers = 0);

}  // namespace sasaki
