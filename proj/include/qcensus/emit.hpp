#pragma once

// Output formatting: CSV (byte-stable: '.' decimal point, 15 significant
// digits, '\n' terminators, no trailing whitespace), JSON with stable key
// order and reals as decimal strings, a minimal two-panel SVG rendering of a
// CountSeries, and the grid mini-language log:a:b:k / lin:a:b:k.

#include <istream>
#include <string>
#include <vector>

#include "qcensus/mainterm.hpp"
#include "qcensus/special.hpp"

namespace qcensus::emit {

std::string format_real(double v, int sig_digits = 15);

std::string series_csv(const mainterm::CountSeries& s);
std::string series_json(const mainterm::CountSeries& s, int sig_digits = 15);
std::string series_svg(const mainterm::CountSeries& s);

std::string constants_csv(const special::SpecialConstants& c, int sig_digits = 15);
std::string constants_json(const special::SpecialConstants& c, int sig_digits = 15);

// "log:a:b:k" (k log-spaced points on [a,b]) or "lin:a:b:k"; k >= 2, b > a > 0.
std::vector<double> parse_grid(const std::string& spec);

// Parse a CSV with header T,count,main,residual (as emitted by series_csv).
mainterm::CountSeries parse_series_csv(std::istream& in);

}  // namespace qcensus::emit
