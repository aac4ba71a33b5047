#pragma once

#include <span>
#include <string>
#include <vector>

#include "mixup/stats.hpp"

namespace mixup::plot {

struct Style {
    double width = 640.0;
    double bar_height = 8.0;
    double bar_gap = 4.0;
    double margin = 40.0;
    std::string image_color = "#9ecae1";  // image sub-bar
    std::string mixup_color = "#08306b";  // mixup sub-bar
    std::string title;
};

// One row per triple, sorted by birth then persistence (descending): light [b, d'), dark [d', d).
// Infinite values are drawn at the clamp (or the largest finite value when unclamped).
std::string mixup_barcode_svg(const MixupBarcode& bc, const Style& style = {});
// Several barcodes stacked vertically in one document.
std::string mixup_barcodes_svg(std::span<const MixupBarcode> barcodes, const Style& style = {});

// Heat map of a matrix (pairwise matrices and mixup profiles), values in [0, 1] or rescaled.
std::string matrix_svg(const std::vector<std::string>& row_names, const std::vector<std::string>& col_names,
                       const Matrix& values, const Style& style = {});

}  // namespace mixup::plot
