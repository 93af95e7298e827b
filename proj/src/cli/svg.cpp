#include "cli/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>

#include "cosa/error.hpp"

namespace cosa::cli {

namespace {

constexpr double kWidth = 800, kHeight = 500, kMargin = 50;

std::string escape(const std::string& s) {
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

std::string open_svg(const std::string& title) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2:.2f}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{3}</text>\n",
      kWidth, kHeight, kWidth / 2, escape(title));
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double width) {
  std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fmt::format("{:.2f}", width) +
                  "\" points=\"";
  for (std::size_t t = 0; t < pts.size(); ++t) s += fmt::format("{}{:.2f},{:.2f}", t ? " " : "", pts[t].first, pts[t].second);
  return s + "\"/>\n";
}

}  // namespace

std::string group_color(int label) {
  static const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
                                  "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
  if (label <= 0) return "#b0b0b0";
  return palette[static_cast<std::size_t>(label - 1) % std::size(palette)];
}

std::string render_dendrogram(const Dendrogram& dend, std::span<const int> labels, const std::string& title) {
  const std::size_t n = dend.n;
  std::vector<double> x(2 * n - 1), y(2 * n - 1, 0.0);
  const double plot_w = kWidth - 2 * kMargin, plot_h = kHeight - 2 * kMargin;
  for (std::size_t pos = 0; pos < n; ++pos)
    x[dend.leaf_order[pos]] = kMargin + (n > 1 ? plot_w * static_cast<double>(pos) / static_cast<double>(n - 1) : 0.0);
  double top = 0.0;
  for (const auto& m : dend.merges) top = std::max(top, m.height);
  if (!(top > 0)) top = 1.0;
  auto ypix = [&](double h) { return kHeight - kMargin - plot_h * h / top; };

  std::string s = open_svg(title);
  s += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>\n", kMargin / 2,
                   ypix(0), ypix(top));
  s += fmt::format("<text x=\"4\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"10\">{:.3g}</text>\n",
                   ypix(top) + 4, top);
  for (std::size_t t = 0; t < dend.merges.size(); ++t) {
    const Merge& m = dend.merges[t];
    const std::size_t id = n + t;
    y[id] = m.height;
    x[id] = 0.5 * (x[m.left] + x[m.right]);
    s += polyline({{x[m.left], ypix(y[m.left])}, {x[m.left], ypix(m.height)}, {x[m.right], ypix(m.height)},
                   {x[m.right], ypix(y[m.right])}},
                  "black", 1.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int label = labels.empty() ? 0 : labels[i];
    s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", x[i], ypix(0) + 6, group_color(label));
  }
  return s + "</svg>\n";
}

std::string render_scatter(const Eigen::MatrixXd& z, std::span<const int> labels, const std::string& title) {
  const Eigen::Index n = z.rows();
  const bool two_d = z.cols() >= 2;
  double lo_x = z.col(0).minCoeff(), hi_x = z.col(0).maxCoeff();
  double lo_y = two_d ? z.col(1).minCoeff() : 0.0, hi_y = two_d ? z.col(1).maxCoeff() : 0.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
  const double scale = (kHeight - 2 * kMargin) / span;
  std::string s = open_svg(title);
  // background first so groups draw on top
  for (int pass = 0; pass < 2; ++pass)
    for (Eigen::Index i = 0; i < n; ++i) {
      const int label = labels.empty() ? 0 : labels[static_cast<std::size_t>(i)];
      if ((label > 0) != (pass == 1)) continue;
      const double px = kWidth / 2 + (z(i, 0) - cx) * scale;
      const double py = kHeight / 2 - ((two_d ? z(i, 1) : 0.0) - cy) * scale;
      s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"{}\"/>\n", px, py, group_color(label));
    }
  return s + "</svg>\n";
}

std::string render_importance(std::span<const double> observed, const std::vector<std::vector<double>>& null_curves,
                              std::span<const double> null_mean, const std::string& title) {
  double top = 0.0;
  for (double v : observed) top = std::max(top, v);
  for (const auto& c : null_curves)
    for (double v : c) top = std::max(top, v);
  if (!(top > 0)) top = 1.0;
  const std::size_t r = observed.size();
  const double plot_w = kWidth - 2 * kMargin, plot_h = kHeight - 2 * kMargin;
  auto curve = [&](std::span<const double> v) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t t = 0; t < v.size(); ++t)
      pts.emplace_back(kMargin + (r > 1 ? plot_w * static_cast<double>(t) / static_cast<double>(r - 1) : 0.0),
                       kHeight - kMargin - plot_h * v[t] / top);
    return pts;
  };
  std::string s = open_svg(title);
  for (const auto& c : null_curves) s += polyline(curve(c), "#2ca02c", 1.0);
  if (!null_mean.empty()) s += polyline(curve(null_mean), "#d62728", 2.0);
  s += polyline(curve(observed), "black", 2.0);
  return s + "</svg>\n";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << text;
}

}  // namespace cosa::cli
