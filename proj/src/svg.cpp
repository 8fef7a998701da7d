#include "hyperpart/svg.hpp"
#include "hyperpart/disks.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

namespace hyperpart {

namespace {

std::string fmt6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
}

struct Bounds {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool any = false;

    void take(double x, double y, double pad) {
        if (!any) {
            xmin = x - pad;
            xmax = x + pad;
            ymin = y - pad;
            ymax = y + pad;
            any = true;
            return;
        }
        xmin = std::min(xmin, x - pad);
        xmax = std::max(xmax, x + pad);
        ymin = std::min(ymin, y - pad);
        ymax = std::max(ymax, y + pad);
    }
};

} // namespace

std::string render_svg(const Partition& part, const Truncation& t, double width_px) {
    struct Item {
        PartitionPoint p;
        DiskAssignment da;
    };
    std::vector<Item> items;
    part.for_each(t, [&](const PartitionPoint& p) {
        items.push_back({p, assign_mu(p, part.mu(), part.config())});
    });

    const double c4 = part.config().c4;
    Bounds b;
    for (const Item& it : items) {
        const std::complex<double> w = it.p.w();
        b.take(w.real(), w.imag(), 0.0);
        b.take(it.da.disk.center.real(), it.da.disk.center.imag(), c4);
    }
    if (!b.any) {
        b.xmin = 0.0;
        b.xmax = 1.0;
        b.ymin = 0.0;
        b.ymax = 1.0;
    }
    const double spanx = std::max(b.xmax - b.xmin, 1e-9);
    const double spany = std::max(b.ymax - b.ymin, 1e-9);
    const double pad = 0.05 * std::max(spanx, spany);
    const double x0 = b.xmin - pad, y0 = b.ymin - pad;
    const double w = spanx + 2.0 * pad, h = spany + 2.0 * pad;
    const double height_px = width_px * h / w;

    // dot radius in user units: level 0 smallest, deeper levels larger, capped
    const double dot0 = 0.004 * std::max(w, h);
    auto dot_radius = [&](std::int64_t level) {
        const double f = 1.0 + 0.5 * static_cast<double>(std::min<std::int64_t>(level, 6));
        return dot0 * f;
    };

    // The y axis is flipped on emission (cy = -im, viewBox spans [-ymax, -ymin])
    // so radii stay plain user units with the imaginary axis pointing up.
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << fmt6(width_px) << "\" height=\"" << fmt6(height_px) << "\" viewBox=\""
        << fmt6(x0) << " " << fmt6(-(y0 + h)) << " " << fmt6(w) << " " << fmt6(h)
        << "\">\n";
    out << "  <g id=\"disks\" fill=\"none\" stroke=\"#2060c0\" stroke-width=\""
        << fmt6(0.002 * std::max(w, h)) << "\">\n";
    for (const Item& it : items) {
        out << "    <circle cx=\"" << fmt6(it.da.disk.center.real()) << "\" cy=\""
            << fmt6(-it.da.disk.center.imag()) << "\" r=\"" << fmt6(it.da.disk.radius)
            << "\"/>\n";
    }
    out << "  </g>\n";
    out << "  <g id=\"points\" fill=\"#c03020\">\n";
    for (const Item& it : items) {
        const std::complex<double> z = it.p.w();
        out << "    <circle cx=\"" << fmt6(z.real()) << "\" cy=\"" << fmt6(-z.imag())
            << "\" r=\"" << fmt6(dot_radius(it.p.level)) << "\"/>\n";
    }
    out << "  </g>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace hyperpart
