#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sipmac/catalog.hpp"
#include "sipmac/report.hpp"

namespace sipmac {

/// Identifiers accepted by emit_figure_data.
const std::vector<std::string>& figure_ids();

/// Plot-ready dataset for one figure. Every figure is evaluated at
/// R = 1.2 A/W on top of `cfg`; data rate and architecture follow the
/// figure. Throws std::invalid_argument for unknown ids.
Table emit_figure_data(std::string_view id, const SimConfig& cfg);

}  // namespace sipmac
