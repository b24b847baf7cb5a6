#include "axistour/viz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "axistour/axis_tour.hpp"
#include "axistour/errors.hpp"
#include "axistour/redact.hpp"

namespace axistour {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fixed viewport; the unit semicircle maps into it with a constant margin.
constexpr int kWidth = 900;
constexpr int kHeight = 500;
constexpr double kMargin = 48.0;
constexpr double kModelXMin = -1.15;
constexpr double kModelXMax = 1.15;
constexpr double kModelYMin = -0.05;
constexpr double kModelYMax = 1.2;

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
};
constexpr int kPaletteSize = 12;

double map_x(double x) {
  return kMargin + (x - kModelXMin) / (kModelXMax - kModelXMin) * (kWidth - 2 * kMargin);
}

double map_y(double y) {
  return kHeight - kMargin - (y - kModelYMin) / (kModelYMax - kModelYMin) * (kHeight - 2 * kMargin);
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
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

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += "\"\"";
    } else {
      out += c;
    }
  }
  out += "\"";
  return out;
}

struct LabelBox {
  double x0, y0, x1, y1;
};

bool overlaps(const LabelBox& a, const LabelBox& b) {
  return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

void write_svg(const ProjectionFrame& frame, const Vocabulary& vocab, std::ostream& os) {
  const auto [a, b] = frame.interval;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  // Unit semicircle and axis rays.
  os << "<path d=\"M " << fmt2(map_x(-1.0)) << " " << fmt2(map_y(0.0)) << " A "
     << fmt2((kWidth - 2 * kMargin) / (kModelXMax - kModelXMin)) << " "
     << fmt2((kHeight - 2 * kMargin) / (kModelYMax - kModelYMin)) << " 0 0 1 "
     << fmt2(map_x(1.0)) << " " << fmt2(map_y(0.0))
     << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << fmt2(map_x(kModelXMin)) << "\" y1=\"" << fmt2(map_y(0.0)) << "\" x2=\""
     << fmt2(map_x(kModelXMax)) << "\" y2=\"" << fmt2(map_y(0.0))
     << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  for (Index l = 0; l < frame.directions.rows(); ++l) {
    const double dx = frame.directions(l, 0);
    const double dy = frame.directions(l, 1);
    const char* color = kPalette[static_cast<std::size_t>(l % kPaletteSize)];
    os << "<line x1=\"" << fmt2(map_x(0.0)) << "\" y1=\"" << fmt2(map_y(0.0)) << "\" x2=\""
       << fmt2(map_x(dx)) << "\" y2=\"" << fmt2(map_y(dy)) << "\" stroke=\"" << color
       << "\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    os << "<text x=\"" << fmt2(map_x(dx * 1.06)) << "\" y=\"" << fmt2(map_y(dy * 1.06))
       << "\" font-size=\"11\" fill=\"" << color << "\" text-anchor=\"middle\">" << (a + l)
       << "</text>\n";
  }

  // Shown points with de-overlapped labels, processed in index order.
  std::vector<LabelBox> placed;
  for (Index i : frame.show) {
    const double px = map_x(frame.coords(i, 0));
    const double py = map_y(frame.coords(i, 1));
    const Index axis = frame.argmax_axis[static_cast<std::size_t>(i)];
    const char* color = kPalette[static_cast<std::size_t>((axis - a) % kPaletteSize)];
    os << "<circle cx=\"" << fmt2(px) << "\" cy=\"" << fmt2(py) << "\" r=\"2.5\" fill=\"" << color
       << "\"/>\n";

    const std::string label = redact_token(vocab.word(i));
    const double width = 6.5 * static_cast<double>(label.size());
    LabelBox box{px + 4.0, py - 11.0, px + 4.0 + width, py + 2.0};
    while (std::any_of(placed.begin(), placed.end(),
                       [&](const LabelBox& other) { return overlaps(box, other); })) {
      box.y0 += 13.0;
      box.y1 += 13.0;
    }
    placed.push_back(box);
    os << "<text x=\"" << fmt2(box.x0) << "\" y=\"" << fmt2(box.y1 - 3.0)
       << "\" font-size=\"10\" fill=\"" << color << "\">" << xml_escape(label) << "</text>\n";
  }
  os << "</svg>\n";
}

void write_csv(const ProjectionFrame& frame, const Vocabulary& vocab, std::ostream& os) {
  os << "word,x,y,argmax_axis,shown\n";
  std::vector<bool> shown(static_cast<std::size_t>(frame.coords.rows()), false);
  for (Index i : frame.show) shown[static_cast<std::size_t>(i)] = true;
  for (Index i = 0; i < frame.coords.rows(); ++i) {
    os << csv_escape(redact_token(vocab.word(i))) << ',' << format_double(frame.coords(i, 0))
       << ',' << format_double(frame.coords(i, 1)) << ','
       << frame.argmax_axis[static_cast<std::size_t>(i)] << ','
       << (shown[static_cast<std::size_t>(i)] ? "true" : "false") << '\n';
  }
}

}  // namespace

Matrix projection_directions(std::pair<Index, Index> interval) {
  const auto [a, b] = interval;
  if (a >= b) throw DataError("projection interval requires a < b");
  const Index size = b - a + 1;
  Matrix out(size, 2);
  for (Index l = 0; l < size; ++l) {
    const double theta = static_cast<double>(l) * kPi / static_cast<double>(b - a);
    out(l, 0) = std::cos(theta);
    out(l, 1) = std::sin(theta);
  }
  return out;
}

ProjectionFrame project_2d(const EmbeddingMatrix& t_hat, std::pair<Index, Index> interval,
                           Index top_words_per_axis) {
  const auto [a, b] = interval;
  if (a < 0 || b >= t_hat.cols()) throw DataError("projection interval out of matrix range");
  if (!t_hat.normalized) throw DataError("project_2d requires a row-normalized matrix");

  ProjectionFrame frame;
  frame.interval = interval;
  frame.directions = projection_directions(interval);
  frame.coords = t_hat.data.middleCols(a, b - a + 1) * frame.directions;

  frame.argmax_axis.resize(static_cast<std::size_t>(t_hat.rows()));
  for (Index i = 0; i < t_hat.rows(); ++i) {
    Index arg = a;
    double best = t_hat.data(i, a);
    for (Index axis = a + 1; axis <= b; ++axis) {
      if (t_hat.data(i, axis) > best) {
        best = t_hat.data(i, axis);
        arg = axis;
      }
    }
    frame.argmax_axis[static_cast<std::size_t>(i)] = arg;
  }

  std::set<Index> candidates;
  const Index per_axis = std::min<Index>(top_words_per_axis, t_hat.rows());
  for (Index axis = a; axis <= b; ++axis) {
    for (Index i : top_k_indices(t_hat, axis, per_axis)) {
      candidates.insert(i);
    }
  }
  for (Index i : candidates) {
    if (frame.coords(i, 1) >= 0.0) frame.show.push_back(i);
  }
  return frame;
}

void emit_scatter(const ProjectionFrame& frame, const Vocabulary& vocab, ScatterFormat format,
                  const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write scatter file: " + path.string());
  if (format == ScatterFormat::svg) {
    write_svg(frame, vocab, file);
  } else {
    write_csv(frame, vocab, file);
  }
  if (!file) throw IoError("write failed: " + path.string());
}

}  // namespace axistour
