#include "dapsp/approx_apsp.hpp"

#include <algorithm>

#include "dapsp/exact_apsp.hpp"

namespace dapsp {

CountingQueue::CountingQueue(std::size_t c, std::vector<Member> members)
    : members_(std::move(members)), hist_(c + 1, 0), best_(c) {
  for (const Member& m : members_) {
    ++hist_[m.first];
    best_ = std::min<std::size_t>(best_, m.first);
  }
}

std::uint32_t CountingQueue::count(std::size_t j) const {
  std::uint32_t total = 0;
  for (std::size_t k = 0; k <= j && k + 1 < hist_.size(); ++k) total += hist_[k];
  return total;
}

void CountingQueue::raise(std::uint32_t slot, std::uint32_t first) {
  Member& m = members_[slot];
  if (first <= m.first) return;
  --hist_[m.first];
  ++hist_[first];
  m.first = first;
  while (best_ + 1 < hist_.size() && hist_[best_] == 0) ++best_;
}

namespace {

Distance det_threshold(const DecrementalGraph& g, const EngineOptions& opt) {
  const std::size_t n = g.num_vertices();
  if (opt.es_threshold > 0) {
    return std::min<Distance>(opt.es_threshold, static_cast<Distance>(std::max<std::size_t>(n, 1)));
  }
  return clamp_threshold(det_hybrid_formula(n, g.initial_num_edges(), opt.eps), n,
                         opt.cutoff_factor);
}

detail::LadderCore make_det_core(const DecrementalGraph& g, const EngineOptions& opt,
                                 Distance threshold) {
  const std::size_t n = g.num_vertices();
  ScaleLadder ladder = ScaleLadder::build(std::max<std::size_t>(n, 2), opt.eps, Variant::approx_det);
  const Distance start = std::max(threshold, log_cutoff(n, opt.cutoff_factor));
  const std::size_t i0 = detail::first_level_at_least(ladder, start);
  const Distance depth =
      i0 <= ladder.i_max() ? ladder.floor_d(i0) : static_cast<Distance>(std::max<std::size_t>(n, 1));
  return detail::LadderCore(g, std::move(ladder), i0, depth);
}

}  // namespace

ApproxApsp::ApproxApsp(const DecrementalGraph& g, const EngineOptions& opt)
    : es_threshold_(det_threshold(g, opt)), core_(make_det_core(g, opt, es_threshold_)) {
  const std::size_t n = core_.n();
  const std::size_t c = core_.ladder().c();
  levels_.resize(core_.num_levels());
  for (std::size_t l = 1; l <= levels_.size(); ++l) {
    Level& L = levels_[l - 1];
    const std::size_t i = core_.scale(l);
    for (std::size_t j = 0; j < c; ++j) L.k.push_back(core_.ladder().threshold(i * (c + 1) + j));
    L.qidx.assign(n * n, -1);
  }
  std::vector<PairChange> lower = core_.base_init();
  for (std::size_t l = 1; l <= core_.num_levels(); ++l) lower = process(l, lower, true);
}

Distance ApproxApsp::key_threshold(std::size_t l, std::size_t j) const { return levels_[l - 1].k.at(j); }

const CountingQueue* ApproxApsp::queue(std::size_t l, VertexId u, VertexId v) const {
  const auto& L = levels_[l - 1];
  const std::int32_t q = L.qidx[static_cast<std::size_t>(u) * core_.n() + v];
  return q < 0 ? nullptr : &L.queues[q];
}

std::uint32_t ApproxApsp::first_fit(const Level& L, Distance key) const {
  return static_cast<std::uint32_t>(std::lower_bound(L.k.begin(), L.k.end(), key) - L.k.begin());
}

void ApproxApsp::make_queue(std::size_t l, VertexId u, VertexId v) {
  Level& L = levels_[l - 1];
  const auto q = static_cast<std::uint32_t>(L.queues.size());
  std::vector<CountingQueue::Member> members;
  for (VertexId s : core_.separator(l, u).members()) {
    if (s == u || s == v) continue;
    const Distance key = sat_add(core_.prefix(l - 1, u, s), core_.prefix(l - 1, s, v));
    members.push_back({s, first_fit(L, key)});
  }
  for (std::uint32_t slot = 0; slot < members.size(); ++slot) {
    const VertexId s = members[slot].witness;
    L.index[pair_key(u, s)].push_back({q, slot});
    L.index[pair_key(s, v)].push_back({q, slot});
  }
  members_ += members.size();
  ++snapshots_;
  L.queues.emplace_back(L.k.size(), std::move(members));
  L.owner.push_back(pair_key(u, v));
  L.qidx[static_cast<std::size_t>(u) * core_.n() + v] = static_cast<std::int32_t>(q);
}

std::vector<PairChange> ApproxApsp::process(std::size_t l, const std::vector<PairChange>& lower,
                                            bool init) {
  Level& L = levels_[l - 1];
  const std::size_t n = core_.n();
  const std::size_t c = L.k.size();
  core_.run_triggers(l, lower);

  // snapshot once the lower estimate passes D_i (1+eps')^i
  const Distance activation = L.k[0];
  for (const PairChange& c2 : lower) {
    if (c2.old_value <= activation && c2.new_value > activation &&
        L.qidx[static_cast<std::size_t>(c2.u) * n + c2.v] < 0) {
      make_queue(l, c2.u, c2.v);
    }
  }

  std::vector<std::uint64_t> touched;
  touched.reserve(lower.size());
  for (const PairChange& ch : lower) {
    touched.push_back(pair_key(ch.u, ch.v));
    if (init) continue;
    auto it = L.index.find(pair_key(ch.u, ch.v));
    if (it == L.index.end()) continue;
    for (const Ref& r : it->second) {
      CountingQueue& q = L.queues[r.queue];
      const auto& m = q.members()[r.slot];
      if (m.first == c) continue;  // already past every sub-scale
      const auto owner = L.owner[r.queue];
      const auto ou = static_cast<VertexId>(owner >> 32);
      const auto ov = static_cast<VertexId>(owner & 0xffffffffU);
      const Distance key = sat_add(core_.prefix(l - 1, ou, m.witness), core_.prefix(l - 1, m.witness, ov));
      const std::uint32_t f = first_fit(L, key);
      if (f == m.first) continue;
      q.raise(r.slot, f);
      ++raises_;
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
    if (q >= 0 && L.queues[q].best() < c) value = std::min(value, L.k[L.queues[q].best()]);
    const Distance old = core_.prefix(l, u, v);
    if (value != old) {
      core_.set_prefix(l, u, v, value);
      out.push_back({u, v, old, value});
    }
  }
  return out;
}

std::vector<PairChange> ApproxApsp::on_delete(const Edge& e) {
  core_.check_clock();
  std::vector<PairChange> lower = core_.base_update(e);
  for (std::size_t l = 1; l <= core_.num_levels(); ++l) lower = process(l, lower, false);
  return lower;
}

void ApproxApsp::append_walk(std::size_t l, VertexId u, VertexId v,
                             std::vector<VertexId>& out) const {
  if (u == v) return;
  if (l == 0) {
    const auto p = core_.tree(u).path(v);
    out.insert(out.end(), p.begin() + 1, p.end());
    return;
  }
  if (core_.prefix(l - 1, u, v) == core_.prefix(l, u, v)) {
    append_walk(l - 1, u, v, out);
    return;
  }
  const CountingQueue* q = queue(l, u, v);
  VertexId s = kNoVertex;
  for (const auto& m : q->members()) {
    if (m.first == q->best()) {
      s = m.witness;
      break;
    }
  }
  append_walk(l - 1, u, s, out);
  append_walk(l - 1, s, v, out);
}

std::optional<std::vector<VertexId>> ApproxApsp::report_path(VertexId u, VertexId v) const {
  if (query(u, v) == kInfinity) return std::nullopt;
  std::vector<VertexId> walk{u};
  append_walk(core_.num_levels(), u, v, walk);
  return detail::erase_loops(walk);
}

Counters ApproxApsp::counters() const {
  Counters c;
  core_.add_counters(c);
  c["ladder.es_threshold"] = es_threshold_;
  c["queue.raises"] = raises_;
  c["queue.snapshots"] = snapshots_;
  c["queue.members"] = members_;
  c["queue.ops"] = raises_ + members_;
  return c;
}

}  // namespace dapsp
