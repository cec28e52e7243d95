#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cvsteer::cli {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 520;
constexpr double kLeft = 70;
constexpr double kRight = 160;
constexpr double kTop = 40;
constexpr double kBottom = 60;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

SvgPlot::SvgPlot(double x_min, double x_max, double y_min, double y_max)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max)
{
    if (!(x_max > x_min) || !(y_max > y_min)) throw std::invalid_argument("empty plot range");
}

void SvgPlot::set_labels(std::string title, std::string x_label, std::string y_label)
{
    title_ = std::move(title);
    x_label_ = std::move(x_label);
    y_label_ = std::move(y_label);
}

double SvgPlot::px(double x) const
{
    return kLeft + (x - x_min_) / (x_max_ - x_min_) * (kWidth - kLeft - kRight);
}

double SvgPlot::py(double y) const
{
    return kHeight - kBottom - (y - y_min_) / (y_max_ - y_min_) * (kHeight - kTop - kBottom);
}

void SvgPlot::rect(double x0, double y0, double x1, double y1, const std::string& fill)
{
    const double left = px(std::min(x0, x1));
    const double right = px(std::max(x0, x1));
    const double top = py(std::max(y0, y1));
    const double bottom = py(std::min(y0, y1));
    body_ += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(right - left) + "\" height=\""
             + num(bottom - top) + "\" fill=\"" + fill + "\" stroke=\"none\"/>\n";
}

void SvgPlot::polyline(const std::vector<std::pair<double, double>>& points, const std::string& stroke, double width,
                       bool dashed)
{
    std::string run;
    int count = 0;
    auto flush = [&] {
        if (count >= 2) {
            body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"";
            if (dashed) body_ += " stroke-dasharray=\"6 4\"";
            body_ += " points=\"" + run + "\"/>\n";
        }
        run.clear();
        count = 0;
    };
    for (const auto& [x, y] : points) {
        if (!std::isfinite(x) || !std::isfinite(y) || y < y_min_ || y > y_max_ || x < x_min_ || x > x_max_) {
            flush();
            continue;
        }
        if (count) run += ' ';
        run += num(px(x)) + "," + num(py(y));
        ++count;
    }
    flush();
}

void SvgPlot::legend(const std::string& label, const std::string& colour)
{
    legend_.emplace_back(label, colour);
}

std::string SvgPlot::render() const
{
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight)
           + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += body_;

    const double x0 = px(x_min_), x1 = px(x_max_), y0 = py(y_min_), y1 = py(y_max_);
    out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y1) + "\" width=\"" + num(x1 - x0) + "\" height=\"" + num(y0 - y1)
           + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double t = i / 5.0;
        const double xv = x_min_ + (x_max_ - x_min_) * t;
        const double yv = y_min_ + (y_max_ - y_min_) * t;
        out += "<line x1=\"" + num(px(xv)) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(px(xv)) + "\" y2=\"" + num(y0 + 5)
               + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(y0 + 18) + "\" text-anchor=\"middle\">" + tick_label(xv)
               + "</text>\n";
        out += "<line x1=\"" + num(x0 - 5) + "\" y1=\"" + num(py(yv)) + "\" x2=\"" + num(x0) + "\" y2=\"" + num(py(yv))
               + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(x0 - 8) + "\" y=\"" + num(py(yv) + 4) + "\" text-anchor=\"end\">" + tick_label(yv)
               + "</text>\n";
    }
    out += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"" + num(kHeight - 15) + "\" text-anchor=\"middle\">"
           + escape(x_label_) + "</text>\n";
    out += "<text x=\"18\" y=\"" + num((y0 + y1) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
           + num((y0 + y1) / 2) + ")\">" + escape(y_label_) + "</text>\n";
    out += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" + escape(title_)
           + "</text>\n";

    double ly = kTop + 10;
    for (const auto& [label, colour] : legend_) {
        out += "<rect x=\"" + num(x1 + 15) + "\" y=\"" + num(ly - 9) + "\" width=\"14\" height=\"10\" fill=\"" + colour
               + "\"/>\n";
        out += "<text x=\"" + num(x1 + 35) + "\" y=\"" + num(ly) + "\">" + escape(label) + "</text>\n";
        ly += 18;
    }
    out += "</svg>\n";
    return out;
}

} // namespace cvsteer::cli
