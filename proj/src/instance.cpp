#include "hlearn/instance.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "hlearn/errors.hpp"

namespace hlearn {
namespace {

void build_csr(std::size_t n, const std::vector<Edge>& edges, bool forward, std::vector<std::size_t>& offsets,
               std::vector<Arc>& arcs) {
  offsets.assign(n + 1, 0);
  for (const auto& e : edges) ++offsets[(forward ? e.from : e.to) + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  arcs.resize(edges.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& e : edges) {
    const VertexId key = forward ? e.from : e.to;
    arcs[cursor[key]++] = Arc{forward ? e.to : e.from, e.weight};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::stable_sort(arcs.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
                     arcs.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]),
                     [](const Arc& a, const Arc& b) { return a.to < b.to; });
  }
}

ValidationReport compute_report(const PathInstance& x) {
  ValidationReport report;
  auto violate = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  const std::size_t n = x.size();

  if (n < 2) violate("fewer than 2 vertices");
  {
    std::set<std::string> seen;
    for (const auto& l : x.labels()) {
      if (!seen.insert(l).second) violate("duplicate vertex label '" + l + "'");
    }
  }
  if (n == 0) return report;

  const Edge* prev = nullptr;
  for (const auto& e : x.edges()) {
    if (e.from == e.to) violate("self-loop at '" + x.label(e.from) + "'");
    if (prev != nullptr && prev->from == e.from && prev->to == e.to) {
      violate("duplicate edge ('" + x.label(e.from) + "','" + x.label(e.to) + "')");
    }
    if (sgn(e.weight) < 0) {
      violate("negative weight on ('" + x.label(e.from) + "','" + x.label(e.to) + "')");
    }
    prev = &e;
  }
  if (x.start() == x.goal()) violate("start equals goal");

  std::vector<bool> seen(n, false);
  std::deque<VertexId> queue{x.start()};
  seen[x.start()] = true;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (const auto& arc : x.successors(v)) {
      if (!seen[arc.to]) {
        seen[arc.to] = true;
        queue.push_back(arc.to);
      }
    }
  }
  if (!seen[x.goal()]) violate("goal '" + x.label(x.goal()) + "' unreachable from start");
  return report;
}

}  // namespace

PathInstance::PathInstance(std::vector<std::string> labels, std::vector<Edge> edges, VertexId start, VertexId goal)
    : labels_(std::move(labels)), edges_(std::move(edges)), start_(start), goal_(goal) {
  const std::size_t n = labels_.size();
  if (n > 0 && (start_ >= n || goal_ >= n)) throw InvalidInput("start/goal out of range");
  for (const auto& e : edges_) {
    if (e.from >= n || e.to >= n) throw InvalidInput("edge endpoint out of range");
  }
  for (VertexId v = 0; v < n; ++v) index_.emplace(labels_[v], v);
  std::stable_sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  build_csr(n, edges_, true, out_offsets_, out_arcs_);
  build_csr(n, edges_, false, in_offsets_, in_arcs_);
  report_ = compute_report(*this);
}

PathInstance PathInstance::from_labels(std::vector<std::string> labels, const std::vector<LabeledEdge>& edges,
                                       std::string_view start, std::string_view goal) {
  std::unordered_map<std::string, VertexId> index;
  for (VertexId v = 0; v < labels.size(); ++v) index.emplace(labels[v], v);
  auto lookup = [&](std::string_view l) {
    auto it = index.find(std::string(l));
    if (it == index.end()) throw InvalidInput("unknown vertex label '" + std::string(l) + "'");
    return it->second;
  };
  std::vector<Edge> resolved;
  resolved.reserve(edges.size());
  for (const auto& e : edges) resolved.push_back(Edge{lookup(e.from), lookup(e.to), e.weight});
  const VertexId s = lookup(start);
  const VertexId t = lookup(goal);
  return PathInstance(std::move(labels), std::move(resolved), s, t);
}

std::optional<VertexId> PathInstance::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId PathInstance::id_of(std::string_view label) const {
  auto v = find(label);
  if (!v) throw InvalidInput("unknown vertex label '" + std::string(label) + "'");
  return *v;
}

std::span<const Arc> PathInstance::successors(VertexId v) const {
  return std::span<const Arc>(out_arcs_).subspan(out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]);
}

std::span<const Arc> PathInstance::predecessors(VertexId v) const {
  return std::span<const Arc>(in_arcs_).subspan(in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]);
}

const Rational* PathInstance::weight(VertexId from, VertexId to) const {
  for (const auto& arc : successors(from)) {
    if (arc.to == to) return &arc.weight;
  }
  return nullptr;
}

void PathInstance::require_valid() const {
  if (report_.ok()) return;
  std::ostringstream msg;
  msg << "invalid instance:";
  for (const auto& v : report_.violations) msg << " " << v << ";";
  throw InvalidInput(msg.str());
}

bool PathInstance::operator==(const PathInstance& other) const {
  return labels_ == other.labels_ && edges_ == other.edges_ && start_ == other.start_ && goal_ == other.goal_;
}

ValidationReport validate(const PathInstance& instance) { return instance.validation(); }

std::vector<std::string> vertex_order(const PathInstance& instance) { return instance.labels(); }

HeuristicVector shifted(const HeuristicVector& rho, const Rational& c) { return affine(rho, 1, c); }

HeuristicVector affine(const HeuristicVector& rho, const Rational& a, const Rational& b) {
  std::vector<Rational> out;
  out.reserve(rho.size());
  for (const auto& r : rho) out.emplace_back(a * r + b);
  return HeuristicVector(std::move(out));
}

}  // namespace hlearn
