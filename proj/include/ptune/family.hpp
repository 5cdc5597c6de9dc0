#pragma once

#include <string>
#include <string_view>

namespace ptune {

enum class Family {
    minmax_power,  // (min^a + max^a)^(1/a)
    average_power, // (mean d^a)^(1/a)
    minmax_convex, // a*min + (1-a)*max
    sigma_linear,  // sum_i w_i d_i over sigma selected pairs
    sigma_power,   // (sum_i d_i^a)^(1/a) over sigma selected pairs
};

// Canonical spelling, e.g. "minmax-convex".
std::string family_name(Family f);

// Accepts the canonical names and a few aliases ("convex", "power", "power-minmax", ...).
// Throws Error(unknown_family).
Family parse_family(std::string_view s);

// Power families need the parameter sweep split at 0.
inline bool is_power_family(Family f) {
    return f == Family::minmax_power || f == Family::average_power || f == Family::sigma_power;
}

} // namespace ptune
