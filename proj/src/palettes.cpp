#include "splx/palettes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "splx/error.hpp"

namespace splx {

Rgb palette_lookup(const std::array<Rgb, 256>& table, double t) {
    t = std::clamp(t, 0.0, 1.0);
    double pos = t * 255.0;
    int i = std::min(static_cast<int>(pos), 254);
    double f = pos - i;
    const Rgb& a = table[static_cast<size_t>(i)];
    const Rgb& b = table[static_cast<size_t>(i + 1)];
    return {a.r + f * (b.r - a.r), a.g + f * (b.g - a.g), a.b + f * (b.b - a.b)};
}

const std::array<Rgb, 256>& palette_by_name(const std::string& name) {
    if (name == "viridis") return kViridis;
    if (name == "plasma") return kPlasma;
    throw Error(ErrorCode::InconsistentSpec, "unknown palette: " + name);
}

std::string to_hex(const Rgb& c) {
    auto channel = [](double v) {
        return std::clamp(static_cast<int>(std::lround(v * 255.0)), 0, 255);
    };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(c.r), channel(c.g),
                  channel(c.b));
    return buf;
}

}  // namespace splx
