#pragma once

#include <cstdint>
#include <ostream>
#include <string_view>

namespace cgt::cli {

/// Exit codes: 0 definite verdict, 1 failed verification, 2 malformed input,
/// 3 Unknown or budget exhausted.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::uint64_t fnv1a64(std::string_view data);

}  // namespace cgt::cli
