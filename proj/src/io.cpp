#include "rbyhj/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace rbyhj::io {

void ensure_dir(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw std::runtime_error("ensure_dir: cannot create " + path + ": " + ec.message());
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_text: cannot open " + path);
    out << content;
}

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<Series>& series) {
    const int W = 720, H = 440, ml = 64, mr = 16, mt = 36, mb = 44;
    double xmin = HUGE_VAL, xmax = -HUGE_VAL, ymin = HUGE_VAL, ymax = -HUGE_VAL;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!(xmax > xmin)) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (!(ymax > ymin)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double px = (W - ml - mr) / (xmax - xmin);
    const double py = (H - mt - mb) / (ymax - ymin);
    auto X = [&](double x) { return ml + (x - xmin) * px; };
    auto Y = [&](double y) { return H - mb - (y - ymin) * py; };

    static const char* colors[] = {"#1f6fb2", "#c23b22", "#2e8b57", "#8a2be2", "#b8860b", "#444"};
    std::string svg;
    char buf[256];
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
           "\" height=\"" + std::to_string(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\">%s</text>\n",
                  ml, title.c_str());
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" "
                  "stroke=\"#333\"/>\n",
                  ml, mt, W - ml - mr, H - mt - mb);
    svg += buf;
    for (int k = 0; k <= 4; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 4.0;
        const double yv = ymin + (ymax - ymin) * k / 4.0;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%d\" font-family=\"sans-serif\" font-size=\"11\" "
                      "text-anchor=\"middle\">%.4g</text>\n",
                      X(xv), H - mb + 16, xv);
        svg += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%d\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\" "
                      "text-anchor=\"end\">%.4g</text>\n",
                      ml - 6, Y(yv) + 4, yv);
        svg += buf;
    }
    int ci = 0;
    for (const auto& s : series) {
        std::string pts;
        bool open = false;
        std::string poly;
        auto flush = [&]() {
            if (!pts.empty()) {
                poly += "<polyline fill=\"none\" stroke=\"" + std::string(colors[ci % 6]) +
                        "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
                pts.clear();
            }
            open = false;
        };
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                flush();
                continue;
            }
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", X(s.x[i]), Y(s.y[i]));
            pts += buf;
            open = true;
        }
        (void)open;
        flush();
        svg += poly;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\" "
                      "fill=\"%s\">%s</text>\n",
                      W - mr - 180, mt + 18 + 16 * ci, colors[ci % 6], s.label.c_str());
        svg += buf;
        ++ci;
    }
    svg += "</svg>\n";
    write_text(path, svg);
}

}  // namespace rbyhj::io
