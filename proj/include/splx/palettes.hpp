#pragma once

#include <array>
#include <string>

namespace splx {

struct Rgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
};

extern const std::array<Rgb, 256> kViridis;
extern const std::array<Rgb, 256> kPlasma;

/// Maps t in [0,1] through a 256-entry table with linear interpolation
/// between entries; 0 hits the first entry exactly, 1 the last.
Rgb palette_lookup(const std::array<Rgb, 256>& table, double t);

const std::array<Rgb, 256>& palette_by_name(const std::string& name);

/// "#rrggbb" hex form for SVG attributes.
std::string to_hex(const Rgb& c);

}  // namespace splx
