#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hlearn/rational.hpp"

namespace hlearn {

/// Position of a vertex in the instance's vertex list. The list position is
/// the tie-breaking total order: smaller id wins ties.
using VertexId = std::uint32_t;

struct Arc {
  VertexId to;
  Rational weight;
  bool operator==(const Arc&) const = default;
};

struct Edge {
  VertexId from;
  VertexId to;
  Rational weight;
  bool operator==(const Edge&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// A weighted digraph with a start and a goal over a fixed, ordered vertex
/// set. Immutable after construction. Construction accepts structurally
/// invalid graphs (self-loops, duplicate edges, unreachable goal, ...) so that
/// validate() can report them; the search engines refuse invalid instances.
class PathInstance {
 public:
  PathInstance() = default;
  PathInstance(std::vector<std::string> labels, std::vector<Edge> edges, VertexId start, VertexId goal);

  /// Convenience builder addressing vertices by label. Throws InvalidInput
  /// when an edge or the start/goal names an unknown label.
  struct LabeledEdge {
    std::string from;
    std::string to;
    Rational weight;
  };
  static PathInstance from_labels(std::vector<std::string> labels, const std::vector<LabeledEdge>& edges,
                                  std::string_view start, std::string_view goal);

  std::size_t size() const { return labels_.size(); }
  VertexId start() const { return start_; }
  VertexId goal() const { return goal_; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(VertexId v) const { return labels_.at(v); }
  std::optional<VertexId> find(std::string_view label) const;
  VertexId id_of(std::string_view label) const;  // throws InvalidInput

  /// Edges sorted by (from, to) in vertex order.
  const std::vector<Edge>& edges() const { return edges_; }
  /// Outgoing arcs of v sorted by target id.
  std::span<const Arc> successors(VertexId v) const;
  /// Incoming arcs of v (Arc::to holds the tail) sorted by tail id.
  std::span<const Arc> predecessors(VertexId v) const;
  const Rational* weight(VertexId from, VertexId to) const;

  const ValidationReport& validation() const { return report_; }
  bool valid() const { return report_.ok(); }
  /// Throws InvalidInput listing all violations.
  void require_valid() const;

  bool operator==(const PathInstance& other) const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<Arc> out_arcs_;
  std::vector<std::size_t> in_offsets_;
  std::vector<Arc> in_arcs_;
  VertexId start_ = 0;
  VertexId goal_ = 0;
  ValidationReport report_;
};

/// Checks the instance invariants: n >= 2, distinct labels, no self-loops, no
/// duplicate edges, non-negative weights, start != goal, goal reachable.
ValidationReport validate(const PathInstance& instance);

/// The vertex total order used by every engine, as labels.
std::vector<std::string> vertex_order(const PathInstance& instance);

/// Heuristic values indexed by VertexId.
class HeuristicVector {
 public:
  HeuristicVector() = default;
  explicit HeuristicVector(std::size_t n, const Rational& fill = 0) : values_(n, fill) {}
  explicit HeuristicVector(std::vector<Rational> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](VertexId v) const { return values_[v]; }
  Rational& operator[](VertexId v) { return values_[v]; }
  std::span<const Rational> values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool operator==(const HeuristicVector&) const = default;

 private:
  std::vector<Rational> values_;
};

/// rho + c on every entry.
HeuristicVector shifted(const HeuristicVector& rho, const Rational& c);
/// a * rho + b on every entry.
HeuristicVector affine(const HeuristicVector& rho, const Rational& a, const Rational& b);

}  // namespace hlearn
