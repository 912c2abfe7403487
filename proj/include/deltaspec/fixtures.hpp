#pragma once

#include <cstdint>
#include <string>

namespace deltaspec {

// Deterministic battery over the small end of the acceptance grid. For a
// fixed seed the returned JSON is byte-identical across runs and across
// search worker counts.
std::string fixtures_run(std::uint64_t seed, unsigned workers);

}  // namespace deltaspec
