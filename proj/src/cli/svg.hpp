#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cosa/hclust.hpp"

namespace cosa::cli {

/// Colour for a group label; label 0 (background) is gray.
std::string group_color(int label);

/// Dendrogram with heights on the vertical axis and leaves coloured by `labels` (may be empty).
std::string render_dendrogram(const Dendrogram& dend, std::span<const int> labels, const std::string& title);

/// First two columns of z as a scatter plot, coloured by `labels` (may be empty).
std::string render_scatter(const Eigen::MatrixXd& z, std::span<const int> labels, const std::string& title);

/// Observed importance curve (black), null curves (green) and their mean (red).
std::string render_importance(std::span<const double> observed, const std::vector<std::vector<double>>& null_curves,
                              std::span<const double> null_mean, const std::string& title);

void write_text(const std::string& path, const std::string& text);

}  // namespace cosa::cli
