#include "dapsp/graph.hpp"

#include <algorithm>
#include <string>

namespace dapsp {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::self_loop: return "SelfLoop";
    case Errc::vertex_out_of_range: return "VertexOutOfRange";
    case Errc::edge_absent: return "EdgeAbsent";
    case Errc::clock_skew: return "ClockSkew";
    case Errc::window_too_narrow: return "WindowTooNarrow";
    case Errc::search_exhausted: return "SearchExhausted";
    case Errc::oracle_contract_violation: return "OracleContractViolation";
    case Errc::epsilon_out_of_range: return "EpsilonOutOfRange";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::probability_out_of_range: return "ProbabilityOutOfRange";
    case Errc::bad_params: return "BadParams";
    case Errc::parse_error: return "ParseError";
    case Errc::verification_failure: return "VerificationFailure";
    case Errc::no_edges_left: return "NoEdgesLeft";
  }
  return "Unknown";
}

DecrementalGraph::DecrementalGraph(const DecrementalGraph& other)
    : out_(other.out_),
      in_(other.in_),
      initial_out_(other.initial_out_),
      initial_in_(other.initial_in_),
      alive_(other.alive_),
      position_(other.position_),
      initial_m_(other.initial_m_),
      clock_(other.clock_) {}

DecrementalGraph& DecrementalGraph::operator=(const DecrementalGraph& other) {
  if (this != &other) {
    DecrementalGraph copy(other);
    *this = std::move(copy);
  }
  return *this;
}

DecrementalGraph DecrementalGraph::from_edge_list(std::size_t n, std::span<const Edge> edges) {
  DecrementalGraph g;
  g.out_.resize(n);
  g.in_.resize(n);
  g.initial_out_.resize(n);
  g.initial_in_.resize(n);
  g.position_.reserve(edges.size() * 2);
  for (std::uint32_t id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    if (e.tail >= n || e.head >= n) {
      throw Error(Errc::vertex_out_of_range,
                  "edge (" + std::to_string(e.tail) + "," + std::to_string(e.head) + ") with n=" +
                      std::to_string(n));
    }
    if (e.tail == e.head) {
      throw Error(Errc::self_loop, "self-loop at " + std::to_string(e.tail));
    }
    const auto key = pair_key(e.tail, e.head);
    if (g.position_.contains(key)) {
      throw Error(Errc::duplicate_edge,
                  "(" + std::to_string(e.tail) + "," + std::to_string(e.head) + ")");
    }
    g.position_.emplace(key, Slot{static_cast<std::uint32_t>(g.out_[e.tail].size()),
                                  static_cast<std::uint32_t>(g.in_[e.head].size()), id});
    g.out_[e.tail].push_back(e.head);
    g.in_[e.head].push_back(e.tail);
    g.initial_out_[e.tail].push_back({e.head, id});
    g.initial_in_[e.head].push_back({e.tail, id});
  }
  g.alive_.assign(edges.size(), 1);
  g.initial_m_ = edges.size();
  return g;
}

void DecrementalGraph::check_vertex(VertexId v) const {
  if (v >= out_.size()) {
    throw Error(Errc::vertex_out_of_range, std::to_string(v));
  }
}

bool DecrementalGraph::has_edge(VertexId tail, VertexId head) const {
  return position_.contains(pair_key(tail, head));
}

std::vector<Edge> DecrementalGraph::edges() const {
  std::vector<Edge> result;
  result.reserve(position_.size());
  for (VertexId a = 0; a < out_.size(); ++a) {
    for (VertexId b : out_[a]) result.push_back({a, b});
  }
  std::sort(result.begin(), result.end());
  return result;
}

DeletionReceipt DecrementalGraph::delete_edge(Edge e) {
  check_vertex(e.tail);
  check_vertex(e.head);
  auto it = position_.find(pair_key(e.tail, e.head));
  if (it == position_.end()) {
    throw Error(Errc::edge_absent,
                "(" + std::to_string(e.tail) + "," + std::to_string(e.head) + ")");
  }
  const Slot slot = it->second;
  position_.erase(it);
  alive_[slot.id] = 0;

  auto& outs = out_[e.tail];
  if (slot.out_pos + 1 != outs.size()) {
    const VertexId moved = outs.back();
    outs[slot.out_pos] = moved;
    position_.at(pair_key(e.tail, moved)).out_pos = slot.out_pos;
  }
  outs.pop_back();

  auto& ins = in_[e.head];
  if (slot.in_pos + 1 != ins.size()) {
    const VertexId moved = ins.back();
    ins[slot.in_pos] = moved;
    position_.at(pair_key(moved, e.head)).in_pos = slot.in_pos;
  }
  ins.pop_back();

  ++clock_;
  DeletionReceipt receipt{e, clock_, {}};
  receipt.notified.reserve(listeners_.size());
  for (auto& [id, listener] : listeners_) {
    listener(e, clock_);
    receipt.notified.push_back(id);
  }
  return receipt;
}

SubscriptionId DecrementalGraph::subscribe(Listener listener) {
  const SubscriptionId id = next_subscription_++;
  listeners_.emplace_back(id, std::move(listener));
  return id;
}

void DecrementalGraph::unsubscribe(SubscriptionId id) {
  std::erase_if(listeners_, [id](const auto& entry) { return entry.first == id; });
}

}  // namespace dapsp
