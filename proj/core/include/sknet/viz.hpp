#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sknet/embedding.hpp"
#include "sknet/graph.hpp"
#include "sknet/hierarchy.hpp"
#include "sknet/partition.hpp"

namespace sknet {

struct SvgStyle {
  double width = 440.0;
  double height = 340.0;
  double margin = 20.0;
  double node_radius = 5.0;
  double edge_width = 1.0;
  double font_size = 8.0;
  std::string edge_color = "#999999";
  std::string unlabeled_color = "#cccccc";
  std::vector<std::string> palette = {
      "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
      "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#1f77b4", "#17becf"};
};

// Node positions in the unit square, y pointing up.
struct Layout {
  std::vector<std::array<double, 2>> positions;
};

// First two embedding columns mapped into the unit square with one scale
// factor; the smaller axis is centered. Identical points go to (0.5, 0.5).
Layout layout_from_embedding(const EmbeddingMatrix& e);

// One circle per node and one line per edge (per stored entry for directed
// graphs, per unordered pair otherwise); self-loops are not drawn. Fill is
// palette[label mod size], or unlabeled_color without a label.
std::string svg_graph(const Graph& g, const Layout& layout,
                      const std::optional<Partition>& labels = std::nullopt,
                      const SvgStyle& style = {});

// Leaves evenly spaced in leaf_order(), merge heights on a linear vertical
// scale with the top merge at the top margin. One polyline per merge and one
// text label per leaf; leaf_names replaces the leaf ids when given.
// Throws FormatError for an invalid dendrogram.
std::string svg_dendrogram(const Dendrogram& d, const SvgStyle& style = {},
                           const std::vector<std::string>& leaf_names = {});

}  // namespace sknet
