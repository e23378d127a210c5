#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace relaycache {

// Entry point shared by the binary and the tests. args excludes the program
// name. Returns the exit code: 0 success, 2 configuration or usage error,
// 3 model/numerical error.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

// Seed for the i-th sweep point: splitmix64(base_seed + i).
std::uint64_t splitmix64(std::uint64_t x);

}
