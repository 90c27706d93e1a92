#include "qcensus/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qcensus::emit {

std::string format_real(double v, int sig_digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig_digits, v);
    return buf;
}

std::string series_csv(const mainterm::CountSeries& s) {
    std::string out = "T,count,main,residual\n";
    for (const auto& r : s.rows) {
        out += format_real(r.T);
        out += ',';
        out += std::to_string(r.count);
        out += ',';
        out += format_real(r.main);
        out += ',';
        out += format_real(r.residual);
        out += '\n';
    }
    return out;
}

std::string series_json(const mainterm::CountSeries& s, int sig_digits) {
    std::string out = "{\n  \"rows\": [\n";
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        const auto& r = s.rows[i];
        out += "    {\"T\": \"" + format_real(r.T, sig_digits) + "\", \"count\": " +
               std::to_string(r.count) + ", \"main\": \"" + format_real(r.main, sig_digits) +
               "\", \"residual\": \"" + format_real(r.residual, sig_digits) + "\"}";
        out += (i + 1 < s.rows.size()) ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

namespace {

struct Frame {
    double x0, y0, w, h;       // pixel frame
    double xmin, xmax, ymin, ymax;
    double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
    double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

void polyline(std::string& svg, const Frame& f, const mainterm::CountSeries& s,
              bool use_main, const char* color) {
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1\" points=\"";
    for (const auto& r : s.rows) {
        double y = use_main ? r.main : static_cast<double>(r.count);
        svg += format_real(f.px(r.T), 6) + "," + format_real(f.py(y), 6) + " ";
    }
    if (!s.rows.empty()) svg.pop_back();
    svg += "\"/>\n";
}

}  // namespace

std::string series_svg(const mainterm::CountSeries& s) {
    if (s.rows.empty()) throw std::domain_error("series_svg: empty series");
    double tmin = s.rows.front().T, tmax = s.rows.back().T;
    double cmax = 0.0, rmax = 1.0;
    for (const auto& r : s.rows) {
        cmax = std::max(cmax, std::max(static_cast<double>(r.count), r.main));
        rmax = std::max(rmax, std::fabs(r.residual));
    }
    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"840\" height=\"320\" "
        "viewBox=\"0 0 840 320\">\n<rect width=\"840\" height=\"320\" fill=\"white\"/>\n";
    Frame a{50, 30, 330, 250, tmin, tmax, 0.0, cmax * 1.05};
    Frame b{470, 30, 330, 250, tmin, tmax, -rmax * 1.1, rmax * 1.1};
    svg += "<rect x=\"50\" y=\"30\" width=\"330\" height=\"250\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<rect x=\"470\" y=\"30\" width=\"330\" height=\"250\" fill=\"none\" stroke=\"black\"/>\n";
    polyline(svg, a, s, false, "#1f77b4");  // count
    polyline(svg, a, s, true, "#d62728");   // main term (visually on top of it)
    // residual scatter
    svg += "<line x1=\"470\" y1=\"" + format_real(b.py(0.0), 6) + "\" x2=\"800\" y2=\"" +
           format_real(b.py(0.0), 6) + "\" stroke=\"#888\" stroke-width=\"0.5\"/>\n";
    for (const auto& r : s.rows)
        svg += "<circle cx=\"" + format_real(b.px(r.T), 6) + "\" cy=\"" +
               format_real(b.py(r.residual), 6) + "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
    svg += "<text x=\"180\" y=\"300\" font-size=\"12\">count and main term</text>\n";
    svg += "<text x=\"600\" y=\"300\" font-size=\"12\">count - main term</text>\n";
    svg += "</svg>\n";
    return svg;
}

std::string constants_csv(const special::SpecialConstants& c, int sig) {
    std::string out = "name,value\n";
    out += "euler_gamma," + format_real(c.euler_gamma, sig) + "\n";
    out += "zeta_prime_over_zeta_2," + format_real(c.zeta_prime_2 / c.zeta_2, sig) + "\n";
    out += "gamma_quarter," + format_real(c.gamma_quarter, sig) + "\n";
    out += "C," + format_real(c.C, sig) + "\n";
    out += "v_gamma1," + format_real(c.v_gamma1, sig) + "\n";
    return out;
}

std::string constants_json(const special::SpecialConstants& c, int sig) {
    std::string out = "{\n";
    out += "  \"euler_gamma\": \"" + format_real(c.euler_gamma, sig) + "\",\n";
    out += "  \"zeta_prime_over_zeta_2\": \"" + format_real(c.zeta_prime_2 / c.zeta_2, sig) +
           "\",\n";
    out += "  \"gamma_quarter\": \"" + format_real(c.gamma_quarter, sig) + "\",\n";
    out += "  \"C\": \"" + format_real(c.C, sig) + "\",\n";
    out += "  \"v_gamma1\": \"" + format_real(c.v_gamma1, sig) + "\"\n";
    out += "}\n";
    return out;
}

std::vector<double> parse_grid(const std::string& spec) {
    auto fail = [&] { throw std::domain_error("bad grid spec: " + spec); };
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : spec) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else
            cur += ch;
    }
    parts.push_back(cur);
    if (parts.size() == 1) {
        // a single T value
        try {
            return {std::stod(parts[0])};
        } catch (...) {
            fail();
        }
    }
    if (parts.size() != 4) fail();
    double a = 0, b = 0;
    long k = 0;
    try {
        a = std::stod(parts[1]);
        b = std::stod(parts[2]);
        k = std::stol(parts[3]);
    } catch (...) {
        fail();
    }
    if (!(a > 0.0) || !(b > a) || k < 2) fail();
    std::vector<double> grid(static_cast<std::size_t>(k));
    if (parts[0] == "log") {
        double ratio = std::log(b / a);
        for (long i = 0; i < k; ++i)
            grid[static_cast<std::size_t>(i)] = a * std::exp(ratio * i / (k - 1));
    } else if (parts[0] == "lin") {
        for (long i = 0; i < k; ++i)
            grid[static_cast<std::size_t>(i)] = a + (b - a) * i / (k - 1);
    } else
        fail();
    grid.back() = b;  // avoid drift on the endpoint
    return grid;
}

mainterm::CountSeries parse_series_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "T,count,main,residual")
        throw std::domain_error("parse_series_csv: bad header");
    mainterm::CountSeries s;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string f0, f1, f2, f3;
        if (!std::getline(row, f0, ',') || !std::getline(row, f1, ',') ||
            !std::getline(row, f2, ',') || !std::getline(row, f3))
            throw std::domain_error("parse_series_csv: bad row: " + line);
        s.rows.push_back({std::stod(f0), static_cast<mainterm::Int>(std::stoll(f1)),
                          std::stod(f2), std::stod(f3)});
    }
    return s;
}

}  // namespace qcensus::emit
