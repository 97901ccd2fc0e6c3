#pragma once

#include <string>
#include <vector>

namespace rbyhj::io {

struct Series {
    std::string label;
    std::vector<double> x, y;
};

// Self-contained SVG line plot (axes, ticks, legend). Non-finite samples are
// dropped from the polyline.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<Series>& series);

void ensure_dir(const std::string& path);
void write_text(const std::string& path, const std::string& content);

}  // namespace rbyhj::io
