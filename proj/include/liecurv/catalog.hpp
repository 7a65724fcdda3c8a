#pragma once

#include <string>
#include <vector>

#include "liecurv/liealg.hpp"

namespace liecurv {

/// Named algebra with its default metric. For se2 the default metric is
/// deliberately not ad-invariant (negative-test entry), so callers that
/// need a MetricLieAlgebra must go through make_metric_algebra and be
/// prepared for it to throw.
struct CatalogEntry {
    std::string id;
    std::string description;
    LieAlgebra algebra;
    Matrix default_metric;
};

/// Identifiers accepted by catalog_entry. "abelian:n" is parametric
/// (1 <= n <= 32); the rest are fixed.
std::vector<std::string> catalog_ids();

/// Rows for `catalog --algebras` (generic "abelian:n" row included).
std::vector<std::string> catalog_listing();

CatalogEntry catalog_entry(const std::string& id, const Tolerances& tols = default_tolerances());

/// Entry + validated metric. Throws NotAdInvariant for se2.
MetricLieAlgebra make_metric_algebra(const std::string& id, const Tolerances& tols = default_tolerances());

} // namespace liecurv
