#include "quadmoduli/plot.hpp"

#include "quadmoduli/height.hpp"

#include <cstdio>
#include <sstream>

namespace quadmoduli {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string point(Complex z) { return fmt(z.real()) + "," + fmt(-z.imag()); }

}  // namespace

std::string triangle_levels_svg(const std::vector<double> &levels, int samples) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.5 -3 4 3.5\" width=\"800\" height=\"700\">\n";
    out << "  <rect x=\"-1.5\" y=\"-3\" width=\"4\" height=\"3.5\" fill=\"white\"/>\n";
    out << "  <line x1=\"-1.5\" y1=\"0\" x2=\"2.5\" y2=\"0\" stroke=\"#bbb\" stroke-width=\"0.005\"/>\n";
    out << "  <line x1=\"0\" y1=\"0\" x2=\"1\" y2=\"0\" stroke=\"black\" stroke-width=\"0.01\"/>\n";
    for (double s : levels) {
        auto curve = triangle_level_curve(s, samples);
        out << "  <polyline data-level=\"" << fmt(s) << "\" fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"0.008\" points=\"";
        for (std::size_t k = 0; k < curve.size(); ++k)
            out << (k ? " " : "") << point(curve[k]);
        if (!curve.empty())
            out << " " << point(curve.front());
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::vector<std::vector<Complex>> svg_polylines(const std::string &svg) {
    std::vector<std::vector<Complex>> out;
    for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) {
        auto close = svg.find('>', pos);
        auto attr = svg.find("points=\"", pos);
        if (close == std::string::npos || attr == std::string::npos || attr > close)
            throw Error(ErrorKind::InvalidInput, "polyline without points");
        attr += 8;
        auto end = svg.find('"', attr);
        if (end == std::string::npos)
            throw Error(ErrorKind::InvalidInput, "unterminated points attribute");
        std::vector<Complex> pts;
        std::istringstream in(svg.substr(attr, end - attr));
        std::string tok;
        while (in >> tok) {
            auto comma = tok.find(',');
            if (comma == std::string::npos)
                throw Error(ErrorKind::InvalidInput, "malformed polyline point " + tok);
            pts.emplace_back(std::stod(tok.substr(0, comma)), -std::stod(tok.substr(comma + 1)));
        }
        out.push_back(std::move(pts));
    }
    return out;
}

}  // namespace quadmoduli
