#include "ptune/family.hpp"

#include "ptune/error.hpp"

namespace ptune {

std::string family_name(Family f) {
    switch (f) {
    case Family::minmax_power: return "minmax-power";
    case Family::average_power: return "average-power";
    case Family::minmax_convex: return "minmax-convex";
    case Family::sigma_linear: return "sigma-linear";
    case Family::sigma_power: return "sigma-power";
    }
    return "unknown";
}

Family parse_family(std::string_view s) {
    if (s == "minmax-power" || s == "power-minmax" || s == "power" || s == "a1")
        return Family::minmax_power;
    if (s == "average-power" || s == "power-average" || s == "average" || s == "a2")
        return Family::average_power;
    if (s == "minmax-convex" || s == "convex-minmax" || s == "convex" || s == "a3")
        return Family::minmax_convex;
    if (s == "sigma-linear") return Family::sigma_linear;
    if (s == "sigma-power") return Family::sigma_power;
    throw Error(ErrorCode::unknown_family, "unknown merge family '" + std::string(s) + "'");
}

} // namespace ptune
