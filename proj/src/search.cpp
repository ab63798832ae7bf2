#include "hlearn/search.hpp"

#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hlearn/errors.hpp"

namespace hlearn {
namespace {

enum class Status : unsigned char { Unseen, Open, Closed };

// OPEN keyed by (score, vertex); the vertex component realizes the tie-breaking order.
using OpenList = std::set<std::pair<Rational, VertexId>>;

void check_inputs(const PathInstance& instance, const HeuristicVector& rho) {
  instance.require_valid();
  if (rho.size() != instance.size()) {
    throw InvalidInput("heuristic vector has " + std::to_string(rho.size()) + " entries, instance has " +
                       std::to_string(instance.size()) + " vertices");
  }
}

class TraceRecorder {
 public:
  TraceRecorder(Algorithm algo, std::size_t n, const SearchOptions& options)
      : options_(options), first_selected_(n, false) {
    trace_.algorithm = algo;
    trace_.detail = options.detail;
    trace_.vertex_count = n;
  }

  void on_select(VertexId v) {
    trace_.selections.push_back(v);
    if (!first_selected_[v]) {
      first_selected_[v] = true;
      trace_.selected.push_back(v);
    }
    if (options_.max_iterations != 0 && trace_.selections.size() > options_.max_iterations) {
      throw std::runtime_error("search exceeded iteration budget");
    }
  }

  void snapshot(VertexId selected, const std::vector<Status>& status, const std::vector<std::optional<VertexId>>& parent,
                const std::vector<std::optional<Rational>>* g) {
    if (options_.detail != TraceDetail::Full) return;
    Snapshot snap;
    snap.iteration = trace_.selections.size();
    snap.selected = selected;
    for (VertexId v = 0; v < status.size(); ++v) {
      if (status[v] == Status::Open) snap.open.push_back(v);
      if (status[v] == Status::Closed) snap.closed.push_back(v);
    }
    snap.parent = parent;
    if (g != nullptr) snap.g = *g;
    trace_.snapshots.push_back(std::move(snap));
  }

  SearchTrace finish(const PathInstance& instance, const std::vector<std::optional<VertexId>>& parent) {
    std::vector<VertexId> reversed{instance.goal()};
    while (reversed.back() != instance.start()) {
      const auto& p = parent[reversed.back()];
      if (!p || reversed.size() > instance.size()) throw std::logic_error("parent pointers do not reach start");
      reversed.push_back(*p);
    }
    trace_.path.assign(reversed.rbegin(), reversed.rend());
    trace_.cost = path_cost(instance, trace_.path);
    return std::move(trace_);
  }

  SearchTrace& trace() { return trace_; }

 private:
  SearchOptions options_;
  std::vector<bool> first_selected_;
  SearchTrace trace_;
};

[[noreturn]] void open_exhausted() { throw InvalidInput("OPEN exhausted without reaching the goal"); }

std::vector<std::optional<Rational>> dijkstra_distances(const PathInstance& instance, VertexId source, bool forward) {
  std::vector<std::optional<Rational>> dist(instance.size());
  std::vector<bool> done(instance.size(), false);
  OpenList frontier;
  dist[source] = Rational(0);
  frontier.emplace(Rational(0), source);
  while (!frontier.empty()) {
    auto [d, v] = *frontier.begin();
    frontier.erase(frontier.begin());
    if (done[v]) continue;
    done[v] = true;
    for (const auto& arc : forward ? instance.successors(v) : instance.predecessors(v)) {
      Rational nd = d + arc.weight;
      auto& cur = dist[arc.to];
      if (!cur || nd < *cur) {
        if (cur) frontier.erase({*cur, arc.to});
        cur = nd;
        frontier.emplace(nd, arc.to);
      }
    }
  }
  return dist;
}

}  // namespace

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::Gbfs:
      return "gbfs";
    case Algorithm::AstarReopen:
      return "astar-reopen";
    case Algorithm::AstarNoReopen:
      return "astar-noreopen";
  }
  return "?";
}

SearchTrace run_gbfs(const PathInstance& instance, const HeuristicVector& rho, const SearchOptions& options) {
  check_inputs(instance, rho);
  const std::size_t n = instance.size();
  const VertexId goal = instance.goal();
  TraceRecorder rec(Algorithm::Gbfs, n, options);

  std::vector<Status> status(n, Status::Unseen);
  std::vector<std::optional<VertexId>> parent(n);
  OpenList open;
  open.emplace(rho[instance.start()], instance.start());
  status[instance.start()] = Status::Open;

  while (!open.empty()) {
    const VertexId v = open.begin()->second;
    rec.on_select(v);
    for (const auto& arc : instance.successors(v)) {
      const VertexId c = arc.to;
      if (c == goal) {
        parent[goal] = v;
        rec.snapshot(v, status, parent, nullptr);
        return rec.finish(instance, parent);
      }
      if (status[c] == Status::Unseen) {
        parent[c] = v;
        status[c] = Status::Open;
        open.emplace(rho[c], c);
      }
    }
    open.erase({rho[v], v});
    status[v] = Status::Closed;
    rec.snapshot(v, status, parent, nullptr);
  }
  open_exhausted();
}

SearchTrace run_astar(const PathInstance& instance, const HeuristicVector& rho, bool reopening,
                      const SearchOptions& options) {
  check_inputs(instance, rho);
  const std::size_t n = instance.size();
  const VertexId goal = instance.goal();
  TraceRecorder rec(reopening ? Algorithm::AstarReopen : Algorithm::AstarNoReopen, n, options);

  std::vector<Status> status(n, Status::Unseen);
  std::vector<std::optional<VertexId>> parent(n);
  std::vector<std::optional<Rational>> g(n);
  OpenList open;
  g[instance.start()] = Rational(0);
  open.emplace(rho[instance.start()], instance.start());
  status[instance.start()] = Status::Open;

  while (!open.empty()) {
    const VertexId v = open.begin()->second;
    rec.on_select(v);
    if (v == goal) {
      rec.snapshot(v, status, parent, &g);
      return rec.finish(instance, parent);
    }
    const Rational gv = *g[v];
    for (const auto& arc : instance.successors(v)) {
      const VertexId c = arc.to;
      Rational g_new = gv + arc.weight;
      switch (status[c]) {
        case Status::Unseen:
          g[c] = g_new;
          parent[c] = v;
          status[c] = Status::Open;
          open.emplace(g_new + rho[c], c);
          break;
        case Status::Open:
          if (g_new < *g[c]) {
            open.erase({*g[c] + rho[c], c});
            g[c] = g_new;
            parent[c] = v;
            open.emplace(g_new + rho[c], c);
          }
          break;
        case Status::Closed:
          if (reopening && g_new < *g[c]) {
            g[c] = g_new;
            parent[c] = v;
            status[c] = Status::Open;
            open.emplace(g_new + rho[c], c);
            ++rec.trace().reopenings;
          }
          break;
      }
    }
    open.erase({gv + rho[v], v});
    status[v] = Status::Closed;
    rec.snapshot(v, status, parent, &g);
  }
  open_exhausted();
}

SearchTrace run_search(Algorithm algo, const PathInstance& instance, const HeuristicVector& rho,
                       const SearchOptions& options) {
  switch (algo) {
    case Algorithm::Gbfs:
      return run_gbfs(instance, rho, options);
    case Algorithm::AstarReopen:
      return run_astar(instance, rho, true, options);
    case Algorithm::AstarNoReopen:
      return run_astar(instance, rho, false, options);
  }
  throw std::logic_error("unknown algorithm");
}

std::vector<std::optional<Rational>> distances_from(const PathInstance& instance, VertexId source) {
  return dijkstra_distances(instance, source, true);
}

std::vector<std::optional<Rational>> distances_to(const PathInstance& instance, VertexId target) {
  return dijkstra_distances(instance, target, false);
}

CanonicalOptimalPath dijkstra_opt(const PathInstance& instance) {
  instance.require_valid();
  const VertexId s = instance.start();
  const VertexId t = instance.goal();
  const auto from_s = distances_from(instance, s);
  const auto to_t = distances_to(instance, t);
  if (!from_s[t]) throw InvalidInput("goal unreachable");
  const Rational opt = *from_s[t];

  // An edge lies on some optimal path iff it is tight; every s-t path made of
  // tight edges costs exactly opt. The lexicographically least simple one is
  // built greedily, checking that the goal stays reachable through unvisited
  // tight edges.
  auto tight = [&](VertexId v, const Arc& arc) {
    return from_s[v] && to_t[arc.to] && *from_s[v] + arc.weight + *to_t[arc.to] == opt;
  };
  const std::size_t n = instance.size();
  std::vector<bool> visited(n, false);
  auto reaches_goal = [&](VertexId from) {
    std::vector<bool> seen = visited;
    std::deque<VertexId> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      if (v == t) return true;
      for (const auto& arc : instance.successors(v)) {
        if (!seen[arc.to] && tight(v, arc)) {
          seen[arc.to] = true;
          queue.push_back(arc.to);
        }
      }
    }
    return false;
  };

  CanonicalOptimalPath result{{s}, opt};
  visited[s] = true;
  VertexId cur = s;
  while (cur != t) {
    bool advanced = false;
    for (const auto& arc : instance.successors(cur)) {
      if (visited[arc.to] || !tight(cur, arc) || !reaches_goal(arc.to)) continue;
      cur = arc.to;
      visited[cur] = true;
      result.path.push_back(cur);
      advanced = true;
      break;
    }
    if (!advanced) throw std::logic_error("canonical path construction stalled");
  }
  return result;
}

Rational path_cost(const PathInstance& instance, const std::vector<VertexId>& path) {
  Rational total = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Rational* w = instance.weight(path[i], path[i + 1]);
    if (w == nullptr) throw InvalidInput("path uses a missing edge");
    total += *w;
  }
  return total;
}

std::string TraceFingerprint::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

TraceFingerprint trace_fingerprint(const SearchTrace& trace) {
  std::ostringstream out;
  auto ids = [&](const std::vector<VertexId>& vs) {
    for (auto v : vs) out << v << ',';
  };
  out << to_string(trace.algorithm) << '|' << (trace.detail == TraceDetail::Full ? 'F' : 'S') << '|';
  ids(trace.selections);
  for (const auto& snap : trace.snapshots) {
    out << ';' << snap.iteration << ':' << snap.selected << "|o:";
    ids(snap.open);
    out << "|c:";
    ids(snap.closed);
    out << "|p:";
    for (VertexId v = 0; v < snap.parent.size(); ++v) {
      if (snap.parent[v]) out << v << '=' << *snap.parent[v] << ',';
    }
    out << "|g:";
    for (VertexId v = 0; v < snap.g.size(); ++v) {
      if (snap.g[v]) out << v << '=' << to_string(*snap.g[v]) << ',';
    }
  }
  out << "#path:";
  ids(trace.path);
  out << "#cost:" << to_string(trace.cost);
  return TraceFingerprint{out.str()};
}

Json path_to_json(const std::vector<VertexId>& path, const PathInstance& instance) {
  Json out = Json::array();
  for (auto v : path) out.push_back(instance.label(v));
  return out;
}

Json trace_to_json(const SearchTrace& trace, const PathInstance& instance) {
  auto labels = [&](const std::vector<VertexId>& vs) { return path_to_json(vs, instance); };
  Json snaps = Json::array();
  for (const auto& snap : trace.snapshots) {
    Json parent = Json::object();
    for (VertexId v = 0; v < snap.parent.size(); ++v) {
      if (snap.parent[v]) parent[instance.label(v)] = instance.label(*snap.parent[v]);
    }
    Json s{{"iter", snap.iteration},
           {"selected", instance.label(snap.selected)},
           {"open", labels(snap.open)},
           {"closed", labels(snap.closed)},
           {"parent", std::move(parent)}};
    if (is_astar(trace.algorithm)) {
      Json g = Json::object();
      for (VertexId v = 0; v < snap.g.size(); ++v) {
        if (snap.g[v]) g[instance.label(v)] = to_string(*snap.g[v]);
      }
      s["g"] = std::move(g);
    }
    snaps.push_back(std::move(s));
  }
  return Json{{"algorithm", std::string(to_string(trace.algorithm))},
              {"iterations", trace.iterations()},
              {"selected", labels(trace.selected)},
              {"snapshots", std::move(snaps)},
              {"path", labels(trace.path)},
              {"cost", to_string(trace.cost)}};
}

}  // namespace hlearn
