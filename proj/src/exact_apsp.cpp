#include "dapsp/exact_apsp.hpp"

#include <algorithm>

namespace dapsp {

namespace detail {

std::size_t first_level_at_least(const ScaleLadder& ladder, Distance d) {
  for (std::size_t i = 0; i <= ladder.i_max(); ++i) {
    if (ladder.floor_d(i) >= d) return i;
  }
  return ladder.i_max() + 1;
}

std::vector<VertexId> erase_loops(const std::vector<VertexId>& walk) {
  std::vector<VertexId> out;
  std::unordered_map<VertexId, std::size_t> at;
  for (VertexId x : walk) {
    auto it = at.find(x);
    if (it != at.end()) {
      for (std::size_t k = it->second + 1; k < out.size(); ++k) at.erase(out[k]);
      out.resize(it->second + 1);
      continue;
    }
    at[x] = out.size();
    out.push_back(x);
  }
  return out;
}

}  // namespace detail

namespace {

detail::LadderCore make_exact_core(const DecrementalGraph& g, const EngineOptions& opt) {
  const std::size_t n = g.num_vertices();
  ScaleLadder ladder = ScaleLadder::build(std::max<std::size_t>(n, 2), opt.eps, Variant::exact);
  const std::size_t i0 = detail::first_level_at_least(ladder, log_cutoff(n, opt.cutoff_factor));
  const Distance depth =
      i0 <= ladder.i_max() ? ladder.floor_d(i0) : static_cast<Distance>(std::max<std::size_t>(n, 1));
  return detail::LadderCore(g, std::move(ladder), i0, depth);
}

}  // namespace

ExactApsp::ExactApsp(const DecrementalGraph& g, const EngineOptions& opt)
    : core_(make_exact_core(g, opt)) {
  const std::size_t n = core_.n();
  levels_.resize(core_.num_levels());
  for (auto& L : levels_) L.qidx.assign(n * n, -1);
  std::vector<PairChange> lower = core_.base_init();
  for (std::size_t l = 1; l <= core_.num_levels(); ++l) lower = process(l, lower, true);
}

const TwoHopQueue* ExactApsp::queue(std::size_t l, VertexId u, VertexId v) const {
  const auto& L = levels_[l - 1];
  const std::int32_t q = L.qidx[static_cast<std::size_t>(u) * core_.n() + v];
  return q < 0 ? nullptr : &L.queues[q];
}

void ExactApsp::make_queue(std::size_t l, VertexId u, VertexId v) {
  Level& L = levels_[l - 1];
  const auto q = static_cast<std::uint32_t>(L.queues.size());
  std::vector<TwoHopQueue::Member> members;
  for (VertexId s : core_.separator(l, u).members()) {
    if (s == u || s == v) continue;
    members.push_back({s, sat_add(core_.prefix(l - 1, u, s), core_.prefix(l - 1, s, v))});
  }
  for (std::uint32_t slot = 0; slot < members.size(); ++slot) {
    const VertexId s = members[slot].witness;
    L.index[pair_key(u, s)].push_back({q, slot});
    L.index[pair_key(s, v)].push_back({q, slot});
  }
  members_ += members.size();
  ++snapshots_;
  L.queues.emplace_back(std::move(members));
  L.owner.push_back(pair_key(u, v));
  L.qidx[static_cast<std::size_t>(u) * core_.n() + v] = static_cast<std::int32_t>(q);
}

std::vector<PairChange> ExactApsp::process(std::size_t l, const std::vector<PairChange>& lower,
                                           bool init) {
  Level& L = levels_[l - 1];
  const std::size_t n = core_.n();
  core_.run_triggers(l, lower);

  const Distance fd = core_.ladder().windows(core_.scale(l)).floor_d;
  for (const PairChange& c : lower) {
    if (c.old_value <= fd && c.new_value > fd && L.qidx[static_cast<std::size_t>(c.u) * n + c.v] < 0) {
      make_queue(l, c.u, c.v);
    }
  }

  std::vector<std::uint64_t> touched;
  touched.reserve(lower.size());
  for (const PairChange& c : lower) {
    touched.push_back(pair_key(c.u, c.v));
    if (init) continue;
    auto it = L.index.find(pair_key(c.u, c.v));
    if (it == L.index.end()) continue;
    for (const Ref& r : it->second) {
      TwoHopQueue& q = L.queues[r.queue];
      const auto owner = L.owner[r.queue];
      const auto ou = static_cast<VertexId>(owner >> 32);
      const auto ov = static_cast<VertexId>(owner & 0xffffffffU);
      const VertexId s = q.member(r.slot).witness;
      const Distance key = sat_add(core_.prefix(l - 1, ou, s), core_.prefix(l - 1, s, ov));
      if (key == q.member(r.slot).key) continue;
      q.increase_key(r.slot, key);
      ++increase_keys_;
      touched.push_back(owner);
    }
  }
  detail::sort_unique(touched);

  std::vector<PairChange> out;
  for (const auto key : touched) {
    const auto u = static_cast<VertexId>(key >> 32);
    const auto v = static_cast<VertexId>(key & 0xffffffffU);
    const std::int32_t q = L.qidx[static_cast<std::size_t>(u) * n + v];
    Distance value = core_.prefix(l - 1, u, v);
    if (q >= 0) value = std::min(value, L.queues[q].min_key());
    const Distance old = core_.prefix(l, u, v);
    if (value != old) {
      core_.set_prefix(l, u, v, value);
      out.push_back({u, v, old, value});
    }
  }
  return out;
}

std::vector<PairChange> ExactApsp::on_delete(const Edge& e) {
  core_.check_clock();
  std::vector<PairChange> lower = core_.base_update(e);
  for (std::size_t l = 1; l <= core_.num_levels(); ++l) lower = process(l, lower, false);
  return lower;
}

void ExactApsp::append_path(std::size_t l, VertexId u, VertexId v,
                            std::vector<VertexId>& out) const {
  if (u == v) return;
  if (l == 0) {
    const auto p = core_.tree(u).path(v);
    out.insert(out.end(), p.begin() + 1, p.end());
    return;
  }
  if (core_.prefix(l - 1, u, v) == core_.prefix(l, u, v)) {
    append_path(l - 1, u, v, out);
    return;
  }
  const VertexId s = queue(l, u, v)->min_witness();
  append_path(l - 1, u, s, out);
  append_path(l - 1, s, v, out);
}

std::optional<std::vector<VertexId>> ExactApsp::report_path(VertexId u, VertexId v) const {
  if (query(u, v) == kInfinity) return std::nullopt;
  std::vector<VertexId> out{u};
  append_path(core_.num_levels(), u, v, out);
  return out;
}

Counters ExactApsp::counters() const {
  Counters c;
  core_.add_counters(c);
  c["queue.increase_keys"] = increase_keys_;
  c["queue.snapshots"] = snapshots_;
  c["queue.members"] = members_;
  c["queue.ops"] = increase_keys_ + members_;
  return c;
}

}  // namespace dapsp
