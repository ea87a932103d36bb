#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dapsp/types.hpp"

namespace dapsp {

struct TraceEvent {
  enum class Kind { remove, query, query_all };
  Kind kind = Kind::remove;
  VertexId u = 0;
  VertexId v = 0;

  bool operator==(const TraceEvent&) const = default;
};

// Text format, one item per line, 0-based ids:
//   n m
//   E u v        (m times)
//   D u v | Q u v | QA
// '#' starts a comment line.
struct DeletionTrace {
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::vector<TraceEvent> events;

  bool operator==(const DeletionTrace&) const = default;
};

// Throws ParseError (with the line number) on malformed input, and the graph's
// error codes for loops, duplicates, bad ids and deletions of absent edges.
DeletionTrace parse_trace(std::istream& in);
DeletionTrace parse_trace(const std::string& text);
std::string serialize_trace(const DeletionTrace& t);

DeletionTrace read_trace_file(const std::string& path);
void write_trace_file(const DeletionTrace& t, const std::string& path);

// Path v1 -> ... -> vn plus e_i = (v_i, v_{i+2}) for odd i, deleting the e_i
// by increasing i. With extra > 0, that many further edges are inserted
// (chosen by seed) and deleted first. n must be odd and >= 3.
DeletionTrace gen_lower_bound(std::size_t n, std::size_t extra = 0, std::uint64_t seed = 1);

// m distinct random edges, all deleted in random order.
DeletionTrace gen_random(std::size_t n, std::size_t m, std::uint64_t seed);

// `layers` layers of `width` vertices; every vertex gets `degree` random edges
// into the next layer. All edges deleted in random order.
DeletionTrace gen_layered(std::size_t layers, std::size_t width, std::size_t degree,
                          std::uint64_t seed);

// 1-based lower-bound vertex v_i as a 0-based id
inline VertexId lower_bound_vertex(std::size_t i) { return static_cast<VertexId>(i - 1); }

}  // namespace dapsp
