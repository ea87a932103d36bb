#include "dapsp/trace.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace dapsp {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(Errc::parse_error, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::uint64_t number(const std::string& s, std::size_t line) {
  const bool digits = std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
  if (s.empty() || s.size() > 18 || !digits) {
    parse_fail(line, "expected a number, got '" + s + "'");
  }
  return std::stoull(s);
}

// shuffled copy of edges, the usual deletion order of generated traces
std::vector<TraceEvent> delete_all(std::vector<Edge> order, std::mt19937_64& rng) {
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<TraceEvent> ev;
  ev.reserve(order.size());
  for (const Edge& e : order) ev.push_back({TraceEvent::Kind::remove, e.tail, e.head});
  return ev;
}

}  // namespace

DeletionTrace parse_trace(std::istream& in) {
  DeletionTrace t;
  std::set<Edge> present;
  std::size_t m = 0;
  bool header = false;
  std::size_t line_no = 0;
  auto vertex = [&](const std::string& s) {
    const auto v = number(s, line_no);
    if (v >= t.n) {
      throw Error(Errc::vertex_out_of_range, "line " + std::to_string(line_no) + ": " + s);
    }
    return static_cast<VertexId>(v);
  };
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto tok = tokens(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (!header) {
      if (tok.size() != 2) parse_fail(line_no, "header must be 'n m'");
      t.n = number(tok[0], line_no);
      m = number(tok[1], line_no);
      header = true;
      continue;
    }
    if (t.edges.size() < m) {
      if (tok.size() != 3 || tok[0] != "E") parse_fail(line_no, "expected 'E u v'");
      const Edge e{vertex(tok[1]), vertex(tok[2])};
      if (e.tail == e.head) throw Error(Errc::self_loop, "line " + std::to_string(line_no));
      if (!present.insert(e).second) {
        throw Error(Errc::duplicate_edge, "line " + std::to_string(line_no));
      }
      t.edges.push_back(e);
      continue;
    }
    if (tok[0] == "QA" && tok.size() == 1) {
      t.events.push_back({TraceEvent::Kind::query_all, 0, 0});
    } else if ((tok[0] == "D" || tok[0] == "Q") && tok.size() == 3) {
      const VertexId u = vertex(tok[1]);
      const VertexId v = vertex(tok[2]);
      if (tok[0] == "D") {
        if (present.erase(Edge{u, v}) == 0) {
          throw Error(Errc::edge_absent, "line " + std::to_string(line_no));
        }
        t.events.push_back({TraceEvent::Kind::remove, u, v});
      } else {
        t.events.push_back({TraceEvent::Kind::query, u, v});
      }
    } else {
      parse_fail(line_no, "unknown event '" + line + "'");
    }
  }
  if (!header) parse_fail(line_no, "missing header");
  if (t.edges.size() < m) parse_fail(line_no, "expected " + std::to_string(m) + " edges");
  return t;
}

DeletionTrace parse_trace(const std::string& text) {
  std::istringstream in(text);
  return parse_trace(in);
}

std::string serialize_trace(const DeletionTrace& t) {
  std::ostringstream out;
  out << t.n << ' ' << t.edges.size() << '\n';
  for (const Edge& e : t.edges) out << "E " << e.tail << ' ' << e.head << '\n';
  for (const TraceEvent& ev : t.events) {
    switch (ev.kind) {
      case TraceEvent::Kind::remove: out << "D " << ev.u << ' ' << ev.v << '\n'; break;
      case TraceEvent::Kind::query: out << "Q " << ev.u << ' ' << ev.v << '\n'; break;
      case TraceEvent::Kind::query_all: out << "QA\n"; break;
    }
  }
  return out.str();
}

DeletionTrace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::bad_params, "cannot open " + path);
  return parse_trace(in);
}

void write_trace_file(const DeletionTrace& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::bad_params, "cannot write " + path);
  out << serialize_trace(t);
}

DeletionTrace gen_lower_bound(std::size_t n, std::size_t extra, std::uint64_t seed) {
  if (n < 3 || n % 2 == 0) throw Error(Errc::bad_params, "lower_bound needs odd n >= 3");
  DeletionTrace t;
  t.n = n;
  for (std::size_t i = 1; i < n; ++i) t.edges.push_back({lower_bound_vertex(i), lower_bound_vertex(i + 1)});
  std::vector<Edge> shortcuts;
  for (std::size_t i = 1; i + 2 <= n; i += 2) {
    shortcuts.push_back({lower_bound_vertex(i), lower_bound_vertex(i + 2)});
  }
  t.edges.insert(t.edges.end(), shortcuts.begin(), shortcuts.end());

  if (extra > 0) {
    std::set<Edge> used(t.edges.begin(), t.edges.end());
    if (extra > n * (n - 1) - used.size()) throw Error(Errc::bad_params, "too many extra edges");
    std::vector<Edge> free;
    for (VertexId a = 0; a < n; ++a) {
      for (VertexId b = 0; b < n; ++b) {
        if (a != b && !used.count({a, b})) free.push_back({a, b});
      }
    }
    std::mt19937_64 rng(seed);
    std::shuffle(free.begin(), free.end(), rng);
    free.resize(extra);
    t.edges.insert(t.edges.end(), free.begin(), free.end());
    for (const Edge& e : free) t.events.push_back({TraceEvent::Kind::remove, e.tail, e.head});
  }
  for (const Edge& e : shortcuts) t.events.push_back({TraceEvent::Kind::remove, e.tail, e.head});
  return t;
}

DeletionTrace gen_random(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0 || m > n * (n - 1)) {
    throw Error(Errc::bad_params, "random graph with n=" + std::to_string(n) +
                                      " cannot have m=" + std::to_string(m));
  }
  std::mt19937_64 rng(seed);
  DeletionTrace t;
  t.n = n;
  std::set<Edge> used;
  if (2 * m > n * (n - 1)) {
    // dense: shuffle the complete edge set
    std::vector<Edge> all;
    for (VertexId a = 0; a < n; ++a) {
      for (VertexId b = 0; b < n; ++b) {
        if (a != b) all.push_back({a, b});
      }
    }
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(m);
    t.edges = all;
  } else {
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
    while (t.edges.size() < m) {
      const Edge e{pick(rng), pick(rng)};
      if (e.tail == e.head || !used.insert(e).second) continue;
      t.edges.push_back(e);
    }
  }
  t.events = delete_all(t.edges, rng);
  return t;
}

DeletionTrace gen_layered(std::size_t layers, std::size_t width, std::size_t degree,
                          std::uint64_t seed) {
  if (layers < 2 || width == 0 || degree == 0 || degree > width) {
    throw Error(Errc::bad_params, "layered needs layers >= 2 and 1 <= degree <= width");
  }
  std::mt19937_64 rng(seed);
  DeletionTrace t;
  t.n = layers * width;
  std::vector<VertexId> next(width);
  for (std::size_t k = 0; k + 1 < layers; ++k) {
    for (std::size_t a = 0; a < width; ++a) {
      for (std::size_t b = 0; b < width; ++b) next[b] = static_cast<VertexId>((k + 1) * width + b);
      std::shuffle(next.begin(), next.end(), rng);
      for (std::size_t d = 0; d < degree; ++d) {
        t.edges.push_back({static_cast<VertexId>(k * width + a), next[d]});
      }
    }
  }
  t.events = delete_all(t.edges, rng);
  return t;
}

}  // namespace dapsp
