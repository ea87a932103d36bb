#include "dapsp/separator.hpp"

#include <cassert>
#include <cmath>
#include <string>

namespace dapsp {

namespace {

double lg(std::size_t n) { return std::log2(static_cast<double>(n)); }

}  // namespace

ThinLayer find_thin_layer(const DecrementalGraph& g, VertexId root, Orientation o, Distance d1,
                          Distance d2, const std::vector<std::uint8_t>* removed) {
  const std::size_t n = g.num_vertices();
  const double lgn = lg(n);
  if (d2 < d1 || static_cast<double>(d2 - d1 + 1) < lgn) {
    throw Error(Errc::window_too_narrow, "window [" + std::to_string(d1) + "," +
                                             std::to_string(d2) + "] for n=" + std::to_string(n));
  }
  const double width = d2 - d1 + 1;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<VertexId> order{root};
  seen[root] = 1;
  std::size_t begin = 0;  // start of current layer in `order`
  for (Distance k = 0; k <= d2; ++k) {
    const std::size_t end = order.size();
    if (begin == end) {
      throw Error(Errc::search_exhausted, "BFS from " + std::to_string(root) +
                                              " ends at layer " + std::to_string(k));
    }
    if (k >= d1 && static_cast<double>(end - begin) * width <= static_cast<double>(begin) * lgn) {
      ThinLayer t;
      t.index = k;
      t.layer.assign(order.begin() + begin, order.begin() + end);
      t.inner.assign(order.begin(), order.begin() + begin);
      assert(static_cast<double>(t.layer.size()) * width <= static_cast<double>(t.inner.size()) * lgn);
      return t;
    }
    for (std::size_t h = begin; h < end; ++h) {
      for (VertexId b : g.forward(order[h], o)) {
        if (seen[b] || (removed && (*removed)[b])) continue;
        seen[b] = 1;
        order.push_back(b);
      }
    }
    begin = end;
  }
  // Ruled out by the layer-growth argument whenever the window is wide enough.
  throw Error(Errc::search_exhausted, "no thin layer in window");
}

SeparatorScratch::SeparatorScratch(const DecrementalGraph& g)
    : seen_s(g.num_vertices(), 0),
      seen_v(g.num_vertices(), 0),
      edge_stamp(g.initial_num_edges(), 0),
      edge_side(g.initial_num_edges(), 0) {}

std::uint32_t SeparatorScratch::next_epoch() {
  if (++epoch == 0) {
    std::fill(seen_s.begin(), seen_s.end(), 0);
    std::fill(seen_v.begin(), seen_v.end(), 0);
    std::fill(edge_stamp.begin(), edge_stamp.end(), 0);
    epoch = 1;
  }
  return epoch;
}

std::uint64_t Separator::degree_budget(const DecrementalGraph& g, VertexId w) {
  const std::size_t n = g.num_vertices();
  const std::uint64_t delta = std::max<std::uint64_t>(1, (g.initial_num_edges() + n - 1) / n);
  const std::uint64_t deg = g.initial_degree(w);
  return std::max(delta, (deg + delta - 1) / delta * delta);
}

Separator::Separator(const DecrementalGraph& g, VertexId source, const SeparatorWindows& w,
                     std::shared_ptr<SeparatorScratch> scratch)
    : g_(&g),
      source_(source),
      w_(w),
      scratch_(scratch ? std::move(scratch) : std::make_shared<SeparatorScratch>(g)),
      in_set_(g.num_vertices(), 0),
      cut_off_(g.num_vertices(), 0) {
  if (source >= g.num_vertices()) throw Error(Errc::vertex_out_of_range, std::to_string(source));
  small_ = !(w.v_hi >= 1 && w.s_hi > w.s_lo);
  if (!small_) {
    s_first_ = w.s_lo + 1;
    s_last_ = w.s_hi;
    v_last_ = w.v_hi;
  } else {
    // Layers strictly closer than 3/4 of the trigger cannot contain v while the
    // estimate stays within 4/3 of the distance.
    const Distance kmax = (3 * w.trigger + 3) / 4 - 1;
    s_first_ = w.s_lo + 1 <= kmax ? w.s_lo + 1 : 1;
    s_last_ = kmax;
  }
}

// One budgeted BFS. Layer k occupies order[layers[k] .. layers[k+1]).
struct Separator::Side {
  const DecrementalGraph& g;
  Orientation o;
  std::vector<VertexId>& order;
  std::vector<std::size_t>& layers;
  std::vector<std::uint32_t>& seen;
  std::uint32_t epoch;
  std::uint8_t tag;
  Distance first, last;  // window layers
  double width;
  bool active;

  std::size_t head = 0;
  std::uint64_t remaining = 0;
  Distance completed = 0;
  bool exhausted = false;
  bool thin = false;
  // smallest nonempty window layer seen so far, for the fallback
  Distance best = 0;
  std::size_t best_size = 0;

  void start(VertexId root) {
    order.clear();
    layers.clear();
    order.push_back(root);
    seen[root] = epoch;
    layers.push_back(0);
    layers.push_back(1);
    completed = 0;
    check_layer(0);
    if (last == 0) active = false;
  }

  std::size_t layer_size(Distance k) const { return layers[k + 1] - layers[k]; }

  void check_layer(Distance k) {
    const std::size_t size = layer_size(k);
    if (size == 0) {
      exhausted = true;
      active = false;
      return;
    }
    if (k < first || k > last) return;
    const double lgn = std::log2(static_cast<double>(g.num_vertices()));
    if (static_cast<double>(size) * width <= static_cast<double>(layers[k]) * lgn) {
      thin = true;
      active = false;
      return;
    }
    // layer 0 is the search root itself and never a candidate
    if (k >= 1 && (best_size == 0 || size < best_size)) {
      best = k;
      best_size = size;
    }
    if (k == last) active = false;
  }

  bool visited(VertexId x) const { return seen[x] == epoch; }

  template <typename Blocked, typename Charge>
  void step(Blocked&& blocked, Charge&& charge) {
    if (!active) return;
    const VertexId w = order[head];
    if (remaining == 0) remaining = Separator::degree_budget(g, w);
    if (--remaining > 0) return;
    // budget paid in full: expand w
    const auto arcs = o == Orientation::from_source ? g.initial_out_arcs(w) : g.initial_in_arcs(w);
    for (const Arc& a : arcs) {
      if (!g.edge_alive(a.edge) || blocked(a.neighbor)) continue;
      charge(a.edge, tag);
      if (visited(a.neighbor)) continue;
      seen[a.neighbor] = epoch;
      order.push_back(a.neighbor);
    }
    ++head;
    if (head == layers[completed + 1]) {
      ++completed;
      layers.push_back(order.size());
      check_layer(completed);
    }
  }
};

void Separator::add_layer(std::span<const VertexId> layer) {
  for (VertexId x : layer) {
    if (in_set_[x]) continue;
    in_set_[x] = 1;
    log_.push_back(x);
  }
  ++counters_.layers_added;
}

std::vector<VertexId> Separator::on_trigger(VertexId v) {
  ++counters_.triggers;
  if (v == source_ || cut_off_[v]) {
    ++counters_.skipped;
    return {};
  }
  SeparatorScratch& sc = *scratch_;
  const std::uint32_t epoch = sc.next_epoch();
  const std::size_t n = g_->num_vertices();

  Side s{*g_, Orientation::from_source, sc.order_s, sc.layers_s, sc.seen_s, epoch, 0,
         s_first_, s_last_, static_cast<double>(s_last_) - s_first_ + 1, s_first_ <= s_last_};
  Side t{*g_, Orientation::to_source, sc.order_v, sc.layers_v, sc.seen_v, epoch, 1,
         0, v_last_, static_cast<double>(v_last_) + 1, !small_};
  s.start(source_);
  t.start(v);

  // v itself may already be in S; the searches then cut the paths into v
  // strictly before it
  auto blocked = [this, v](VertexId x) { return in_set_[x] != 0 && x != v; };
  auto charge = [&](std::uint32_t edge, std::uint8_t tag) {
    if (sc.edge_stamp[edge] == epoch && sc.edge_side[edge] != tag) ++counters_.edge_overlaps;
    sc.edge_stamp[edge] = epoch;
    sc.edge_side[edge] = tag;
  };

  while (s.active || t.active) {
    if (s.active) {
      ++counters_.budget_units;
      s.step(blocked, charge);
      if (s.visited(v)) throw Error(Errc::oracle_contract_violation, "s-search reached v");
      if (s.thin || s.exhausted) break;
    }
    if (t.active) {
      ++counters_.budget_units;
      t.step(blocked, charge);
      if (t.visited(source_)) throw Error(Errc::oracle_contract_violation, "v-search reached s");
      if (t.thin || t.exhausted) break;
    }
  }

  std::vector<VertexId> added;
  auto cut_v_ball = [&](Distance below) {
    // everything that reaches v in fewer than `below` steps
    const std::size_t end = below < t.layers.size() ? t.layers[below] : t.order.size();
    for (std::size_t k = 0; k < end; ++k) {
      if (!in_set_[t.order[k]] || t.order[k] == v) cut_off_[t.order[k]] = 1;
    }
  };
  auto take = [&](const Side& side, Distance k) {
    added.assign(side.order.begin() + side.layers[k], side.order.begin() + side.layers[k + 1]);
    add_layer(added);
    if (&side == &t) {
      cut_v_ball(k);
    } else {
      cut_v_ball(static_cast<Distance>(t.layers.size()));
      cut_off_[v] = 1;
    }
  };

  if (s.exhausted) {
    ++counters_.exhausted;
    for (VertexId x = 0; x < n; ++x) {
      if (!s.visited(x) && (!in_set_[x] || x == v)) cut_off_[x] = 1;
    }
  } else if (t.exhausted) {
    ++counters_.exhausted;
    cut_v_ball(static_cast<Distance>(t.layers.size()));
  } else if (s.thin) {
    take(s, s.completed);
  } else if (t.thin) {
    take(t, t.completed);
  } else if (s.best_size > 0 || t.best_size > 0) {
    ++counters_.fallback_layers;
    if (s.best_size > 0 && (t.best_size == 0 || s.best_size <= t.best_size)) {
      take(s, s.best);
    } else {
      take(t, t.best);
    }
  } else {
    ++counters_.unseparated;
  }
  return added;
}

}  // namespace dapsp
