#pragma once

#include <string>
#include <vector>

#include "catapt/correspondence.hpp"
#include "catapt/hedonic.hpp"
#include "catapt/power.hpp"

namespace catapt {

struct PlotOptions {
    int width = 720;
    int height = 560;
};

// CA map of axes 1-2: products in blue with their confidence ellipses,
// attributes in red, axis labels carrying the inertia percentages.
std::string ca_map_svg(const CAResult& result, const std::vector<ConfidenceEllipse>& ellipses,
                       const PlotOptions& options = {});

// p-value vs panel size: chosen summary line, 10-90% decile band, the
// threshold line in red, and the interpolated crossing when present.
std::string power_curve_svg(const PowerCurve& curve, const PlotOptions& options = {});

// mean hedonic score per product with SE error bars and compact letters.
std::string hedonic_bars_svg(const AnovaResult& anova, const TukeyResult& tukey,
                             const PlotOptions& options = {});

} // namespace catapt
