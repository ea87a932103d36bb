#pragma once

// Shared vocabulary types for the decremental APSP engine.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace dapsp {

using VertexId = std::uint32_t;
using Distance = std::uint32_t;
using Clock = std::uint64_t;

// Infinity sentinel. Strictly greater than any vertex count we accept, and
// small enough that the sum of two finite distances never reaches it.
inline constexpr Distance kInfinity = 0x3fffffffU;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

constexpr bool is_finite(Distance d) noexcept { return d < kInfinity; }

// Saturating addition: anything involving infinity stays infinity.
constexpr Distance sat_add(Distance a, Distance b) noexcept {
  if (a >= kInfinity || b >= kInfinity) return kInfinity;
  const std::uint64_t s = std::uint64_t{a} + b;
  return s >= kInfinity ? kInfinity : static_cast<Distance>(s);
}

struct Edge {
  VertexId tail = 0;
  VertexId head = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

constexpr std::uint64_t pair_key(VertexId a, VertexId b) noexcept {
  return (std::uint64_t{a} << 32) | b;
}

enum class Orientation { from_source, to_source };

enum class Errc {
  duplicate_edge,
  self_loop,
  vertex_out_of_range,
  edge_absent,
  clock_skew,
  window_too_narrow,
  search_exhausted,
  oracle_contract_violation,
  epsilon_out_of_range,
  out_of_range,
  probability_out_of_range,
  bad_params,
  parse_error,
  verification_failure,
  no_edges_left,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// One entry of a distance-matrix change notification.
struct PairChange {
  VertexId u = 0;
  VertexId v = 0;
  Distance old_value = 0;
  Distance new_value = 0;

  friend bool operator==(const PairChange&, const PairChange&) = default;
};

}  // namespace dapsp
