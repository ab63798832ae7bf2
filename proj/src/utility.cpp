#include "hlearn/utility.hpp"

#include "hlearn/errors.hpp"

namespace hlearn {

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::PathCost:
      return "path-cost";
    case MeasureKind::Suboptimality:
      return "subopt";
    case MeasureKind::Expansions:
      return "expansions";
  }
  return "?";
}

MeasureKind parse_measure_kind(std::string_view text) {
  if (text == "path-cost") return MeasureKind::PathCost;
  if (text == "subopt" || text == "suboptimality") return MeasureKind::Suboptimality;
  if (text == "expansions") return MeasureKind::Expansions;
  throw InvalidInput("unknown measure '" + std::string(text) + "'");
}

UtilityValue evaluate(const UtilityMeasure& measure, const PathInstance& instance, const SearchTrace& trace) {
  if (sgn(measure.cap) <= 0) throw InvalidInput("utility cap must be positive");
  if (trace.vertex_count != instance.size() || trace.path.empty() || trace.path.front() != instance.start() ||
      trace.path.back() != instance.goal()) {
    throw InvalidInput("trace was not produced on this instance");
  }
  const Rational cost = path_cost(instance, trace.path);
  if (cost != trace.cost) throw InvalidInput("trace cost disagrees with the instance weights");

  UtilityValue out;
  switch (measure.kind) {
    case MeasureKind::PathCost:
      out.raw = cost;
      break;
    case MeasureKind::Suboptimality:
      out.raw = cost - dijkstra_opt(instance).cost;
      break;
    case MeasureKind::Expansions:
      out.raw = static_cast<unsigned long>(trace.iterations());
      break;
  }
  out.value = out.raw;
  if (out.value > measure.cap) {
    out.value = measure.cap;
    out.clipped = true;
  }
  if (sgn(out.value) < 0) {
    out.value = 0;
    out.clipped = true;
  }
  return out;
}

Rational default_suboptimality_cap(std::int64_t ell, std::size_t n) {
  return Rational(static_cast<long>(ell)) * static_cast<long>(n - 1);
}

}  // namespace hlearn
