#include "dapsp/rand_apsp.hpp"

#include <algorithm>
#include <limits>

#include "dapsp/exact_apsp.hpp"

namespace dapsp {

SubscaleUnit::SubscaleUnit(std::size_t n, VertexId source, Distance threshold)
    : source_(source), threshold_(threshold), marked_(n, 0), qidx_(n, -1) {}

const WitnessQueue* SubscaleUnit::queue(VertexId v) const {
  return qidx_[v] < 0 ? nullptr : &queues_[qidx_[v]];
}

std::vector<VertexId> SubscaleUnit::live_witnesses(VertexId v) const {
  std::vector<VertexId> out;
  if (const WitnessQueue* q = queue(v)) {
    for (std::size_t k = 0; k < q->witness.size(); ++k) {
      if (q->valid[k]) out.push_back(q->witness[k]);
    }
  }
  return out;
}

std::optional<std::uint32_t> SubscaleUnit::make_queue(VertexId v,
                                                      std::span<const VertexId> members,
                                                      const KeyFn& key) {
  if (qidx_[v] >= 0) {
    WitnessQueue& old = queues_[qidx_[v]];
    old.dead = true;
    old.witness = {};
    old.valid = {};
    old.live = 0;
    qidx_[v] = -1;
  }
  WitnessQueue w;
  w.target = v;
  for (VertexId s : members) {
    if (s == source_ || s == v || key(s, v) > threshold_) continue;
    w.witness.push_back(s);
    w.valid.push_back(1);
    ++w.live;
  }
  if (w.live == 0) return std::nullopt;
  const auto q = static_cast<std::uint32_t>(queues_.size());
  queues_.push_back(std::move(w));
  qidx_[v] = static_cast<std::int32_t>(q);
  return q;
}

std::optional<std::uint32_t> SubscaleUnit::add_witness(VertexId v, VertexId s, const KeyFn& key) {
  WitnessQueue& w = queues_[qidx_[v]];
  if (s == source_ || s == v || key(s, v) > threshold_) return std::nullopt;
  w.witness.push_back(s);
  w.valid.push_back(1);
  ++w.live;
  return static_cast<std::uint32_t>(w.witness.size() - 1);
}

bool SubscaleUnit::drop(std::uint32_t q, std::uint32_t slot) {
  WitnessQueue& w = queues_[q];
  if (w.dead || !w.valid[slot]) return false;
  w.valid[slot] = 0;
  return --w.live == 0;
}

std::vector<VertexId> SubscaleUnit::take_pending(VertexId v) {
  if (pending_.empty()) return {};
  auto it = pending_.find(v);
  if (it == pending_.end()) return {};
  std::vector<VertexId> out = std::move(it->second);
  pending_.erase(it);
  return out;
}

InTree SubscaleUnit::grow_in_tree(const DecrementalGraph& g, VertexId root, Distance radius) const {
  InTree t;
  t.root = root;
  if (radius == 0) {
    t.vertices.push_back(root);
    if (marked(root)) t.leaves.push_back(root);
    t.unmarked = t.vertices.size() - t.leaves.size();
    return t;
  }
  std::unordered_map<VertexId, Distance> depth{{root, 0}};
  t.vertices.push_back(root);
  if (marked(root)) t.leaves.push_back(root);
  for (std::size_t h = 0; h < t.vertices.size(); ++h) {
    const VertexId x = t.vertices[h];
    const Distance dx = depth[x];
    if (marked(x) || dx >= radius) continue;
    for (const Arc& a : g.initial_in_arcs(x)) {
      if (!g.edge_alive(a.edge)) continue;
      t.edges.push_back(a.edge);
      if (depth.count(a.neighbor)) continue;
      depth.emplace(a.neighbor, dx + 1);
      t.vertices.push_back(a.neighbor);
      if (marked(a.neighbor)) t.leaves.push_back(a.neighbor);
    }
  }
  t.unmarked = t.vertices.size() - t.leaves.size();
  return t;
}

PairOutcome SubscaleUnit::process_pair(const DecrementalGraph& g, VertexId root, Distance radius,
                                       std::span<const VertexId> separator, const KeyFn& key) {
  PairOutcome out;
  out.tree = grow_in_tree(g, root, radius);
  const InTree& t = out.tree;

  if (edge_seen_.empty()) edge_seen_.assign(g.initial_num_edges(), 0);
  for (std::uint32_t e : t.edges) {
    if (edge_seen_[e]) ++edge_repeats_;
    edge_seen_[e] = 1;
  }

  auto good_for_root = [&](VertexId s) {
    return s != source_ && s != root && key(s, root) <= threshold_;
  };
  if (t.unmarked > radius) {
    out.kind = 1;
    for (VertexId s : separator) {
      if (good_for_root(s)) out.witnesses.push_back(s);
    }
    for (VertexId x : t.vertices) {
      if (auto q = make_queue(x, out.witnesses, key)) out.queues.push_back(*q);
    }
  } else {
    out.kind = 2;
    std::vector<VertexId> pool;
    for (VertexId x : t.leaves) {
      const auto w = live_witnesses(x);
      pool.insert(pool.end(), w.begin(), w.end());
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    for (VertexId s : pool) {
      if (good_for_root(s)) out.witnesses.push_back(s);
    }
    for (VertexId x : t.vertices) {
      if (marked(x)) continue;
      if (auto q = make_queue(x, out.witnesses, key)) out.queues.push_back(*q);
    }
  }
  for (VertexId x : t.vertices) {
    if (!marked_[x]) {
      marked_[x] = 1;
      ++marked_count_;
    }
  }
  return out;
}

namespace {

constexpr Clock kNever = std::numeric_limits<Clock>::max();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream keyed by (seed, scale, sub-scale, source, separator ordinal), so a
// draw does not depend on the order in which things get processed.
class CounterRng {
 public:
  using result_type = std::uint64_t;
  CounterRng(std::uint64_t seed, std::uint64_t i, std::uint64_t j, std::uint64_t u,
             std::uint64_t ordinal)
      : state_(splitmix64(seed ^ splitmix64(i ^ splitmix64(j ^ splitmix64(u ^ splitmix64(ordinal)))))) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return splitmix64(state_++); }

 private:
  std::uint64_t state_;
};

Distance rand_threshold(const DecrementalGraph& g, const EngineOptions& opt) {
  const std::size_t n = g.num_vertices();
  if (opt.es_threshold > 0) {
    return std::min<Distance>(opt.es_threshold, static_cast<Distance>(std::max<std::size_t>(n, 1)));
  }
  return clamp_threshold(rand_hybrid_formula(n, g.initial_num_edges(), opt.eps), n,
                         opt.cutoff_factor);
}

double rand_probability(const DecrementalGraph& g, const EngineOptions& opt, Distance d) {
  if (opt.sample_probability >= 0) {
    if (opt.sample_probability > 1.0) {
      throw Error(Errc::probability_out_of_range, "p=" + std::to_string(opt.sample_probability));
    }
    return opt.sample_probability;
  }
  const std::size_t n = std::max<std::size_t>(g.num_vertices(), 2);
  return std::min(1.0, rand_probability_formula(n, g.initial_num_edges(), opt.eps, d));
}

detail::LadderCore make_rand_core(const DecrementalGraph& g, const EngineOptions& opt,
                                  Distance threshold) {
  const std::size_t n = g.num_vertices();
  ScaleLadder ladder =
      ScaleLadder::build(std::max<std::size_t>(n, 2), opt.eps, Variant::approx_rand);
  const Distance start = std::max(threshold, log_cutoff(n, opt.cutoff_factor));
  const std::size_t i0 = detail::first_level_at_least(ladder, start);
  // the ES part has to cover everything up to D_{i0} (1+eps')
  const Distance depth = i0 <= ladder.i_max() ? ladder.threshold(i0 * ladder.c() + 1)
                                              : static_cast<Distance>(std::max<std::size_t>(n, 1));
  return detail::LadderCore(g, std::move(ladder), i0, depth);
}

}  // namespace

RandApsp::RandApsp(const DecrementalGraph& g, const EngineOptions& opt)
    : es_threshold_(rand_threshold(g, opt)),
      p_(rand_probability(g, opt, es_threshold_)),
      seed_(opt.seed),
      core_(make_rand_core(g, opt, es_threshold_)),
      table_(p_, g.num_vertices()),
      clock_(g.clock()) {
  const std::size_t n = core_.n();
  const std::size_t c = core_.ladder().c();
  first_mark_.assign(n * n, kNever);
  levels_.resize(core_.num_levels());
  for (std::size_t l = 1; l <= levels_.size(); ++l) {
    Level& L = levels_[l - 1];
    const std::size_t i = core_.scale(l);
    L.subs.resize(c + 2);
    for (std::size_t j = 0; j < c + 2; ++j) {
      L.subs[j].t = core_.ladder().threshold(i * (c + 2) + j);
      L.subs[j].units.resize(n);
    }
    L.sampled.assign(n, 0);
  }
  std::vector<PairChange> lower = core_.base_init();
  for (std::size_t l = 1; l <= core_.num_levels(); ++l) lower = process(l, lower, true);
}

const SubscaleUnit* RandApsp::unit(std::size_t l, std::size_t j, VertexId u) const {
  return levels_[l - 1].subs[j].units[u].get();
}

SubscaleUnit& RandApsp::unit_at(std::size_t l, std::size_t j, VertexId u) {
  Sub& sub = levels_[l - 1].subs[j];
  auto& p = sub.units[u];
  if (!p) p = std::make_unique<SubscaleUnit>(core_.n(), u, sub.t);
  return *p;
}

std::optional<Clock> RandApsp::first_mark(VertexId u, VertexId v) const {
  const Clock c = first_mark_[static_cast<std::size_t>(u) * core_.n() + v];
  if (c == kNever) return std::nullopt;
  return c;
}

void RandApsp::register_queue(Sub& sub, VertexId u, std::uint32_t q) {
  const WitnessQueue& w = sub.units[u]->queue_at(q);
  for (std::uint32_t slot = 0; slot < w.witness.size(); ++slot) {
    const VertexId s = w.witness[slot];
    sub.index[pair_key(u, s)].push_back({u, q, slot});
    sub.index[pair_key(s, w.target)].push_back({u, q, slot});
  }
  witnesses_ += w.witness.size();
}

void RandApsp::sample_new_members(std::size_t l) {
  Level& L = levels_[l - 1];
  const std::size_t n = core_.n();
  const std::size_t i = core_.scale(l);
  for (VertexId u = 0; u < n; ++u) {
    const auto members = core_.separator(l, u).members();
    const Key key{&core_, l, u};
    for (std::size_t k = L.sampled[u]; k < members.size(); ++k) {
      const VertexId s = members[k];
      for (std::size_t j = 0; j < L.subs.size(); ++j) {
        SubscaleUnit& U = unit_at(l, j, u);
        auto offer = [&](VertexId v) {
          if (v == u || v == s || U.marked(v)) return;
          if (U.queue(v)) {
            if (auto slot = U.add_witness(v, s, key)) {
              Sub& sub = L.subs[j];
              const auto q = static_cast<std::uint32_t>(U.queue_id(v));
              sub.index[pair_key(u, s)].push_back({u, q, *slot});
              sub.index[pair_key(s, v)].push_back({u, q, *slot});
              ++witnesses_;
            }
          } else if (p_ < 1.0) {
            U.add_pending(v, s);
          }
        };
        if (p_ == 1.0) {
          // everything is sampled; inactive targets read the separator itself
          for (VertexId v = 0; v < n; ++v) offer(v);
          sample_hits_ += n;
        } else {
          CounterRng rng(seed_, i, j, u, k);
          for (std::size_t v : table_.sample_subset(n, rng)) {
            ++sample_hits_;
            offer(static_cast<VertexId>(v));
          }
        }
      }
    }
    L.sampled[u] = members.size();
  }
}

std::vector<PairChange> RandApsp::process(std::size_t l, const std::vector<PairChange>& lower,
                                          bool init) {
  Level& L = levels_[l - 1];
  const std::size_t n = core_.n();
  const Distance activation = L.subs[0].t;
  const Distance radius = core_.ladder().radius(core_.scale(l));
  core_.run_triggers(l, lower);
  sample_new_members(l);

  std::vector<std::uint64_t> touched;
  std::vector<Candidate> candidates;
  auto active = [&](VertexId u, VertexId v) { return core_.prefix(l - 1, u, v) > activation; };

  // witnesses whose key went over the threshold
  if (!init) {
    for (const PairChange& ch : lower) {
      for (std::uint32_t j = 0; j < L.subs.size(); ++j) {
        Sub& sub = L.subs[j];
        auto it = sub.index.find(pair_key(ch.u, ch.v));
        if (it == sub.index.end()) continue;
        auto& refs = it->second;
        for (std::size_t r = 0; r < refs.size();) {
          const Ref ref = refs[r];
          SubscaleUnit& U = *sub.units[ref.u];
          const WitnessQueue& w = U.queue_at(ref.queue);
          bool stale = w.dead || !w.valid[ref.slot];
          if (!stale && sat_add(core_.prefix(l - 1, ref.u, w.witness[ref.slot]),
                                core_.prefix(l - 1, w.witness[ref.slot], w.target)) > sub.t) {
            const VertexId target = w.target;
            ++drops_;
            if (U.drop(ref.queue, ref.slot)) {
              touched.push_back(pair_key(ref.u, target));
              if (!U.marked(target) && active(ref.u, target)) candidates.push_back({j, ref.u, target});
            }
            stale = true;
          }
          if (stale) {
            refs[r] = refs.back();
            refs.pop_back();
          } else {
            ++r;
          }
        }
        if (refs.empty()) sub.index.erase(it);
      }
    }
  }

  // targets whose lower estimate just passed the activation threshold
  for (const PairChange& ch : lower) {
    if (!(ch.old_value <= activation && ch.new_value > activation)) continue;
    for (std::uint32_t j = 0; j < L.subs.size(); ++j) {
      SubscaleUnit& U = unit_at(l, j, ch.u);
      if (U.marked(ch.v)) continue;
      const Key key{&core_, l, ch.u};
      std::optional<std::uint32_t> q;
      if (p_ == 1.0) {
        q = U.make_queue(ch.v, core_.separator(l, ch.u).members(), key);
      } else {
        q = U.make_queue(ch.v, U.take_pending(ch.v), key);
      }
      ++snapshots_;
      if (q) {
        register_queue(L.subs[j], ch.u, *q);
      } else {
        candidates.push_back({j, ch.u, ch.v});
      }
    }
  }

  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const Candidate& cand : candidates) {
    SubscaleUnit& U = unit_at(l, cand.j, cand.u);
    if (U.marked(cand.v)) continue;
    const WitnessQueue* w = U.queue(cand.v);
    if (w && w->live > 0) continue;
    const Key key{&core_, l, cand.u};
    const PairOutcome out =
        U.process_pair(core_.graph(), cand.v, radius, core_.separator(l, cand.u).members(), key);
    ++trees_;
    (out.kind == 1 ? case1_ : case2_) += 1;
    tree_edges_ += out.tree.edges.size();
    for (std::uint32_t q : out.queues) register_queue(L.subs[cand.j], cand.u, q);
    std::vector<VertexId> leaves = out.tree.leaves;
    std::sort(leaves.begin(), leaves.end());
    for (VertexId x : out.tree.vertices) {
      touched.push_back(pair_key(cand.u, x));
      if (std::binary_search(leaves.begin(), leaves.end(), x)) continue;
      ++marks_;
      mark_sizes_.push_back(static_cast<std::uint32_t>(out.witnesses.size()));
      Clock& fm = first_mark_[static_cast<std::size_t>(cand.u) * n + x];
      fm = std::min(fm, clock_);
    }
  }

  for (const PairChange& ch : lower) touched.push_back(pair_key(ch.u, ch.v));
  detail::sort_unique(touched);

  std::vector<PairChange> out;
  for (const auto key : touched) {
    const auto u = static_cast<VertexId>(key >> 32);
    const auto v = static_cast<VertexId>(key & 0xffffffffU);
    Distance value = core_.prefix(l - 1, u, v);
    if (value > activation) {
      for (std::size_t j = 0; j < L.subs.size(); ++j) {
        const SubscaleUnit* U = L.subs[j].units[u].get();
        const WitnessQueue* w = U ? U->queue(v) : nullptr;
        if (w && w->live > 0) {
          value = std::min(value, L.subs[j].t);
          break;
        }
      }
    }
    const Distance old = core_.prefix(l, u, v);
    if (value != old) {
      core_.set_prefix(l, u, v, value);
      out.push_back({u, v, old, value});
    }
  }
  return out;
}

std::vector<PairChange> RandApsp::on_delete(const Edge& e) {
  core_.check_clock();
  clock_ = core_.graph().clock();
  std::vector<PairChange> lower = core_.base_update(e);
  for (std::size_t l = 1; l <= core_.num_levels(); ++l) lower = process(l, lower, false);
  return lower;
}

Counters RandApsp::counters() const {
  Counters c;
  core_.add_counters(c);
  c["ladder.es_threshold"] = es_threshold_;
  c["sample.probability_ppm"] = static_cast<std::uint64_t>(p_ * 1e6 + 0.5);
  c["sample.hits"] = sample_hits_;
  c["queue.members"] = witnesses_;
  c["queue.drops"] = drops_;
  c["queue.snapshots"] = snapshots_;
  c["queue.ops"] = witnesses_ + drops_;
  c["in_tree.grown"] = trees_;
  c["in_tree.case1"] = case1_;
  c["in_tree.case2"] = case2_;
  c["in_tree.edges"] = tree_edges_;
  std::uint64_t repeats = 0;
  for (const Level& L : levels_) {
    for (const Sub& sub : L.subs) {
      for (const auto& U : sub.units) {
        if (U) repeats += U->edge_repeats();
      }
    }
  }
  c["in_tree.edge_repeats"] = repeats;
  c["marks"] = marks_;
  std::uint64_t total = 0;
  for (auto s : mark_sizes_) total += s;
  c["marks.queue_total"] = total;
  return c;
}

}  // namespace dapsp
