#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

#include "lmthresh/alrsm.hpp"

namespace lmthresh {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_lmrd(std::ostream& out, std::span<const LmrdRow> rows, char delimiter) {
    const char d = delimiter;
    out << "kind" << d << "tau3" << d << "tau4" << d << "index" << d << "u" << d << "n_excess"
        << d << "distance\n";
    for (const LmrdRow& r : rows) {
        out << to_string(r.kind) << d << num(r.tau3) << d << num(r.tau4) << d << r.index << d
            << num(r.u) << d << r.n_excess << d << num(r.distance) << '\n';
    }
}

void render_lmrd_svg(std::ostream& out, std::span<const LmrdRow> rows) {
    constexpr double kWidth = 640.0;
    constexpr double kHeight = 480.0;
    constexpr double kMargin = 50.0;

    double x_min = 0.0, x_max = 1.0, y_min = -0.25, y_max = 1.0;
    for (const LmrdRow& r : rows) {
        if (r.kind == LmrdKind::candidate || r.kind == LmrdKind::selected) {
            x_min = std::min(x_min, r.tau3);
            x_max = std::max(x_max, r.tau3);
            y_min = std::min(y_min, r.tau4);
            y_max = std::max(y_max, r.tau4);
        }
    }
    auto px = [&](double x) { return kMargin + (x - x_min) / (x_max - x_min) * (kWidth - 2 * kMargin); };
    auto py = [&](double y) {
        return kHeight - kMargin - (y - y_min) / (y_max - y_min) * (kHeight - 2 * kMargin);
    };
    auto polyline = [&](LmrdKind kind, const char* style) {
        out << "<polyline fill=\"none\" " << style << " points=\"";
        for (const LmrdRow& r : rows) {
            if (r.kind == kind) out << num(px(r.tau3)) << ',' << num(py(r.tau4)) << ' ';
        }
        out << "\"/>\n";
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << px(x_min) << "\" y1=\"" << py(0) << "\" x2=\"" << px(x_max)
        << "\" y2=\"" << py(0) << "\" stroke=\"#999\"/>\n";
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(y_min) << "\" x2=\"" << px(0)
        << "\" y2=\"" << py(y_max) << "\" stroke=\"#999\"/>\n";
    polyline(LmrdKind::bound, "stroke=\"#bbb\" stroke-width=\"1\"");
    polyline(LmrdKind::curve, "stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"");
    for (const LmrdRow& r : rows) {
        if (r.kind == LmrdKind::candidate) {
            out << "<circle cx=\"" << num(px(r.tau3)) << "\" cy=\"" << num(py(r.tau4))
                << "\" r=\"4\" fill=\"none\" stroke=\"#1f4e9c\"><title>u" << r.index << " = "
                << num(r.u) << "</title></circle>\n";
        } else if (r.kind == LmrdKind::selected) {
            out << "<circle cx=\"" << num(px(r.tau3)) << "\" cy=\"" << num(py(r.tau4))
                << "\" r=\"5\" fill=\"#c0392b\"><title>selected u" << r.index << " = "
                << num(r.u) << "</title></circle>\n";
        }
    }
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">L-skewness</text>\n";
    out << "<text x=\"14\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 14 " << kHeight / 2
        << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">L-kurtosis</text>\n";
    out << "</svg>\n";
}

}  // namespace lmthresh
