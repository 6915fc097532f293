#pragma once

// Published multiplier counts of alternative designs, kept as static data for
// comparison reports. None of these alternatives is implemented here.

#include <array>
#include <optional>
#include <string_view>

namespace vbfir::reference {

/// Farrow-structure converter multipliers by order (even orders only).
inline std::optional<int> farrow_src_multipliers(int order) {
    switch (order) {
        case 2: return 5;
        case 4: return 15;
        case 6: return 53;
        default: return std::nullopt;
    }
}

struct DesignCost {
    std::string_view method;
    int fixed_filter;
    int src;
    [[nodiscard]] constexpr int total() const { return fixed_filter + src; }
};

/// Variable-bandwidth designs for the 0.14 pi / 0.141 pi fixed filter.
inline constexpr std::array<DesignCost, 4> kVariableBandwidthCosts{{
    {"Harris et al.", 559, 1920},
    {"James et al.", 267, 1920},
    {"Nisha et al.", 267, 20},
    {"Pascal SRC + two-stage FRM (published)", 220, 8},
}};

/// Channelizer designs for the 0.18 pi / 0.181 pi fixed filter.
inline constexpr std::array<DesignCost, 3> kChannelizerCosts{{
    {"James et al.", 281, 1920},
    {"Nisha et al.", 281, 30},
    {"Pascal SRC + two-stage FRM (published)", 235, 10},
}};

}  // namespace vbfir::reference
