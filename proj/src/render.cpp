#include "fracseq/grid.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fracseq {

namespace {

std::string num(double v, int precision = 3) {
    if (std::fabs(v) < 0.5 * std::pow(10.0, -precision)) v = 0.0;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

std::string coord(const Quad& q) {
    if (q.is_integer()) return std::to_string(q.a().numerator());
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, q.to_double(), std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

struct P2 {
    double x, y;
};

std::vector<P2> project(const Polyline& p, Projection proj) {
    if (p.dim > 3) throw std::invalid_argument("svg export supports 2D and projected 3D curves, not dim " +
                                               std::to_string(p.dim));
    if (p.dim == 3 && proj == Projection::Identity)
        throw std::invalid_argument("3D curve needs a projection (isometric or orthographic)");
    const double c30 = std::sqrt(3.0) / 2.0;
    std::vector<P2> out;
    out.reserve(p.vertices.size());
    for (const auto& v : p.vertices) {
        double x = v.size() > 0 ? v[0].to_double() : 0.0;
        double y = v.size() > 1 ? v[1].to_double() : 0.0;
        double z = v.size() > 2 ? v[2].to_double() : 0.0;
        switch (proj) {
            case Projection::Isometric: out.push_back({(x - y) * c30, z + (x + y) * 0.5}); break;
            case Projection::Orthographic:
            case Projection::Identity: out.push_back({x, y}); break;
        }
    }
    return out;
}

}  // namespace

std::string svg_export(const Polyline& p, const RenderOptions& opts) {
    if (!(opts.scale > 0)) throw std::invalid_argument("render scale must be positive");
    std::vector<P2> pts = project(p, opts.projection);
    double minx = 0, maxx = 0, miny = 0, maxy = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == 0 || pts[i].x < minx) minx = pts[i].x;
        if (i == 0 || pts[i].x > maxx) maxx = pts[i].x;
        if (i == 0 || pts[i].y < miny) miny = pts[i].y;
        if (i == 0 || pts[i].y > maxy) maxy = pts[i].y;
    }
    // Screen y grows downwards; flip so the curve keeps y up.
    auto sx = [&](double x) { return (x - minx) * opts.scale + opts.margin; };
    auto sy = [&](double y) { return (maxy - y) * opts.scale + opts.margin; };
    auto at = [&](double x, double y) { return num(sx(x)) + " " + num(sy(y)); };

    double width = (maxx - minx) * opts.scale + 2 * opts.margin;
    double height = (maxy - miny) * opts.scale + 2 * opts.margin;

    std::string d;
    if (!pts.empty()) d = "M " + at(pts[0].x, pts[0].y);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const P2& b = pts[i];
        bool corner = opts.rounded_corners && i + 1 < pts.size();
        if (corner) {
            const P2& a = pts[i - 1];
            const P2& c = pts[i + 1];
            double ax = a.x - b.x, ay = a.y - b.y, cx = c.x - b.x, cy = c.y - b.y;
            double la = std::hypot(ax, ay), lc = std::hypot(cx, cy);
            double cross = ax * cy - ay * cx;
            if (la > 0 && lc > 0 && std::fabs(cross) > 1e-12 * la * lc) {
                double cut = 0.25 * std::min(la, lc);
                d += " L " + at(b.x + ax / la * cut, b.y + ay / la * cut);
                d += " Q " + at(b.x, b.y) + " " + at(b.x + cx / lc * cut, b.y + cy / lc * cut);
                continue;
            }
        }
        d += " L " + at(b.x, b.y);
    }
    if (p.closed && pts.size() > 1) d += " Z";

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) + "\" height=\"" +
           num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    out += "<path d=\"" + d + "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + num(opts.stroke_width) +
           "\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>\n";
    out += "</svg>\n";
    return out;
}

std::string export_csv(const Polyline& p) {
    std::string out;
    for (int c = 1; c <= p.dim; ++c) {
        if (c > 1) out += ",";
        out += "x" + std::to_string(c);
    }
    out += "\n";
    for (const auto& v : p.vertices) {
        for (std::size_t c = 0; c < v.size(); ++c) {
            if (c) out += ",";
            out += coord(v[c]);
        }
        out += "\n";
    }
    return out;
}

std::string export_obj(const Polyline& p) {
    if (p.dim > 3) throw std::invalid_argument("obj export supports up to 3 dimensions");
    std::string out;
    for (const auto& v : p.vertices) {
        out += "v";
        for (int c = 0; c < 3; ++c) out += " " + (c < static_cast<int>(v.size()) ? coord(v[c]) : std::string("0"));
        out += "\n";
    }
    if (p.vertices.size() > 1) {
        out += "l";
        for (std::size_t i = 1; i <= p.vertices.size(); ++i) out += " " + std::to_string(i);
        out += "\n";
    }
    return out;
}

}  // namespace fracseq
