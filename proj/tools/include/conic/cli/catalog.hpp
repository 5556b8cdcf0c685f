#pragma once

#include "conic/cli/config.hpp"
#include "conic/geometry.hpp"

#include <string>
#include <vector>

namespace conic::cli {

struct CatalogEntry {
    std::string name;
    std::string description;
};

/// Named warpings: flat-cone, rigid-scaled, sec52, negcurv, trace-violator, hyperbolic.
const std::vector<CatalogEntry>& example_catalog();
bool in_catalog(const std::string& name);

Warping build_warping(const MetricSpec& spec);
LinkMetric build_link(const MetricSpec& spec);
ConicMetric build_metric(const MetricSpec& spec);

/// Metric for a catalog entry with every other setting at its default.
ConicMetric catalog_metric(const std::string& name, int m = 2);

} // namespace conic::cli
