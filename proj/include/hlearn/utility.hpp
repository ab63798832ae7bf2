#pragma once

#include <string_view>

#include "hlearn/instance.hpp"
#include "hlearn/search.hpp"

namespace hlearn {

enum class MeasureKind { PathCost, Suboptimality, Expansions };

std::string_view to_string(MeasureKind kind);
MeasureKind parse_measure_kind(std::string_view text);  // "path-cost" | "subopt" | "expansions"

/// A bounded utility u: execution -> [0, cap].
struct UtilityMeasure {
  MeasureKind kind = MeasureKind::PathCost;
  Rational cap = 1;
};

struct UtilityValue {
  Rational value;
  Rational raw;
  bool clipped = false;
};

/// Throws InvalidInput when cap <= 0 or when the trace was not produced on
/// this instance (vertex count, endpoints or edges disagree).
UtilityValue evaluate(const UtilityMeasure& measure, const PathInstance& instance, const SearchTrace& trace);

/// Default suboptimality cap l(n-1) for weights bounded by l.
Rational default_suboptimality_cap(std::int64_t ell, std::size_t n);

}  // namespace hlearn
