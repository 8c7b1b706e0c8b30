#include "sknet/viz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string_view>

#include "sknet/error.hpp"

namespace sknet {

namespace {

std::string num(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, 6);
  std::string s(buf, ptr);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

void check_style(const SvgStyle& s) {
  if (!(s.width > 0.0) || !(s.height > 0.0)) {
    throw ParameterError("canvas dimensions must be positive");
  }
  if (!(s.margin >= 0.0) || 2.0 * s.margin >= std::min(s.width, s.height)) {
    throw ParameterError("margins leave no drawing area");
  }
  if (s.palette.empty()) throw ParameterError("palette must not be empty");
}

std::string header(const SvgStyle& s) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         num(s.width) + "\" height=\"" + num(s.height) + "\" viewBox=\"0 0 " +
         num(s.width) + " " + num(s.height) + "\">\n";
}

}  // namespace

Layout layout_from_embedding(const EmbeddingMatrix& e) {
  if (e.coords.cols() < 2) {
    throw ParameterError("a layout needs an embedding with at least 2 columns");
  }
  const auto n = static_cast<std::size_t>(e.coords.rows());
  Layout layout;
  layout.positions.resize(n);
  if (n == 0) return layout;
  double lo[2], span[2];
  for (int c = 0; c < 2; ++c) {
    const auto col = e.coords.col(c);
    if (!col.allFinite()) throw ParameterError("embedding has non-finite coordinates");
    lo[c] = col.minCoeff();
    span[c] = col.maxCoeff() - lo[c];
  }
  const double s = std::max(span[0], span[1]);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 2; ++c) {
      layout.positions[i][c] =
          s > 0.0 ? (e.coords(static_cast<Eigen::Index>(i), c) - lo[c]) / s +
                        (1.0 - span[c] / s) / 2.0
                  : 0.5;
    }
  }
  return layout;
}

std::string svg_graph(const Graph& g, const Layout& layout,
                      const std::optional<Partition>& labels, const SvgStyle& style) {
  check_style(style);
  const std::size_t n = g.n_nodes();
  if (layout.positions.size() != n) {
    throw DimensionError("layout has " + std::to_string(layout.positions.size()) +
                         " positions for " + std::to_string(n) + " nodes");
  }
  if (labels && labels->labels.size() != n) {
    throw DimensionError("partition has " + std::to_string(labels->labels.size()) +
                         " labels for " + std::to_string(n) + " nodes");
  }
  const double side = std::min(style.width, style.height) - 2.0 * style.margin;
  const double x0 = (style.width - side) / 2.0;
  const double y0 = (style.height - side) / 2.0;
  std::vector<double> px(n), py(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [x, y] = layout.positions[i];
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw ParameterError("layout position " + std::to_string(i) + " is not finite");
    }
    px[i] = x0 + x * side;
    py[i] = y0 + (1.0 - y) * side;
  }

  std::string out = header(style);
  if (g.directed()) {
    out += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" "
           "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 "
           "L0,10 z\" fill=\"" + escape(style.edge_color) + "\"/></marker></defs>\n";
  }
  out += "<g stroke=\"" + escape(style.edge_color) + "\" stroke-width=\"" +
         num(style.edge_width) + "\">\n";
  const CsrMatrix& a = g.adjacency();
  for (std::size_t i = 0; i < n; ++i) {
    a.for_each_in_row(i, [&](std::uint64_t j, double) {
      if (j == i || (!g.directed() && j < i)) return;
      double x2 = px[j], y2 = py[j];
      std::string extra;
      if (g.directed()) {
        // Stop at the target's rim so the arrow head stays visible.
        const double dx = x2 - px[i], dy = y2 - py[i];
        const double len = std::hypot(dx, dy);
        if (len > style.node_radius) {
          x2 -= dx / len * style.node_radius;
          y2 -= dy / len * style.node_radius;
        }
        extra = " marker-end=\"url(#arrow)\"";
      }
      out += "<line x1=\"" + num(px[i]) + "\" y1=\"" + num(py[i]) + "\" x2=\"" + num(x2) +
             "\" y2=\"" + num(y2) + "\"" + extra + "/>\n";
    });
  }
  out += "</g>\n<g stroke=\"#ffffff\" stroke-width=\"1.000000\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    std::string fill = style.unlabeled_color;
    if (labels && labels->labels[i] >= 0) {
      fill = style.palette[static_cast<std::size_t>(labels->labels[i]) % style.palette.size()];
    }
    out += "<circle cx=\"" + num(px[i]) + "\" cy=\"" + num(py[i]) + "\" r=\"" +
           num(style.node_radius) + "\" fill=\"" + escape(fill) + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string svg_dendrogram(const Dendrogram& d, const SvgStyle& style,
                           const std::vector<std::string>& leaf_names) {
  check_style(style);
  validate_dendrogram(d);
  const std::size_t n = d.n_leaves;
  if (!leaf_names.empty() && leaf_names.size() != n) {
    throw DimensionError("expected " + std::to_string(n) + " leaf names, got " +
                         std::to_string(leaf_names.size()));
  }
  const double label_band = 2.0 * style.font_size;
  const double top = style.margin;
  const double base = style.height - style.margin - label_band;
  const double step = (style.width - 2.0 * style.margin) / static_cast<double>(std::max<std::size_t>(n, 1));
  const double max_h = d.merges.empty() ? 0.0 : d.merges.back().height;

  std::vector<double> x(n + d.merges.size()), y(n + d.merges.size(), base);
  const std::vector<std::size_t> order = leaf_order(d);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    x[order[pos]] = style.margin + (static_cast<double>(pos) + 0.5) * step;
  }

  std::string out = header(style);
  out += "<g fill=\"none\" stroke=\"#333333\" stroke-width=\"" + num(style.edge_width) + "\">\n";
  for (std::size_t t = 0; t < d.merges.size(); ++t) {
    const Merge& mg = d.merges[t];
    const std::size_t id = n + t;
    x[id] = (x[mg.a] + x[mg.b]) / 2.0;
    y[id] = max_h > 0.0 ? base - mg.height / max_h * (base - top) : base;
    out += "<polyline points=\"" + num(x[mg.a]) + "," + num(y[mg.a]) + " " + num(x[mg.a]) +
           "," + num(y[id]) + " " + num(x[mg.b]) + "," + num(y[id]) + " " + num(x[mg.b]) +
           "," + num(y[mg.b]) + "\"/>\n";
  }
  out += "</g>\n<g font-family=\"sans-serif\" font-size=\"" + num(style.font_size) +
         "\" text-anchor=\"middle\" fill=\"#000000\">\n";
  for (std::size_t leaf : order) {
    const std::string name = leaf_names.empty() ? std::to_string(leaf) : leaf_names[leaf];
    out += "<text x=\"" + num(x[leaf]) + "\" y=\"" + num(base + 1.5 * style.font_size) +
           "\">" + escape(name) + "</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace sknet
