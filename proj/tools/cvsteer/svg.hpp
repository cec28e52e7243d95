#pragma once
// Minimal static SVG plotting: one rectangular data area with axes.

#include <string>
#include <utility>
#include <vector>

namespace cvsteer::cli {

class SvgPlot {
public:
    SvgPlot(double x_min, double x_max, double y_min, double y_max);

    void set_labels(std::string title, std::string x_label, std::string y_label);
    /// Filled rectangle in data coordinates.
    void rect(double x0, double y0, double x1, double y1, const std::string& fill);
    /// Points outside the y range are clipped by breaking the line.
    void polyline(const std::vector<std::pair<double, double>>& points, const std::string& stroke,
                  double width = 2.0, bool dashed = false);
    void legend(const std::string& label, const std::string& colour);

    std::string render() const;

private:
    double px(double x) const;
    double py(double y) const;

    double x_min_, x_max_, y_min_, y_max_;
    std::string title_, x_label_, y_label_;
    std::string body_;
    std::vector<std::pair<std::string, std::string>> legend_;
};

} // namespace cvsteer::cli
