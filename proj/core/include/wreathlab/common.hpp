#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wreathlab {

/// Thrown when an operation would exceed a configured enumeration or
/// search budget.  The message names the bound that was hit.
class CapacityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown when operands live over different coordinate universes or
/// different group presentations.
class DimensionMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct Budgets {
    std::uint64_t bfs_elements = 2'000'000; // word-ball BFS element cap
    std::size_t tsp_support = 14;           // exact tour support cap
    std::size_t sdp_points = 128;           // distortion solver point cap
    std::uint64_t coset_elements = 1u << 20; // coset enumeration cap
};

inline constexpr const char* kVersion = "0.1.0";

} // namespace wreathlab
