#include "strel/scatter.hpp"

#include <cstdio>
#include <fstream>

#include "strel/errors.hpp"

namespace strel {
namespace {

constexpr double kLeft = 60.0;
constexpr double kTop = 30.0;
constexpr double kSide = 400.0;

double to_x(double v) { return kLeft + v * kSide; }
double to_y(double v) { return kTop + (1.0 - v) * kSide; }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

void emit_scatter(std::span<const double> gold, std::span<const double> pred,
                  const std::filesystem::path& stem, const std::string& title) {
  if (gold.size() != pred.size()) {
    throw AlignmentError("scatter: gold has " + std::to_string(gold.size()) +
                         " values, pred has " + std::to_string(pred.size()));
  }
  const std::filesystem::path csv_path = stem.string() + ".csv";
  const std::filesystem::path svg_path = stem.string() + ".svg";
  char buf[128];

  {
    std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + csv_path.string());
    out << "gold,pred\n";
    for (std::size_t i = 0; i < gold.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", gold[i], pred[i]);
      out << buf;
    }
  }

  std::ofstream svg(svg_path, std::ios::binary | std::ios::trunc);
  if (!svg) throw Error("cannot write " + svg_path.string());
  const double width = kLeft + kSide + 30.0;
  const double height = kTop + kSide + 50.0;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n",
                width, height);
  svg << buf;
  svg << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"none\" "
                "stroke=\"black\"/>\n",
                kLeft, kTop, kSide, kSide);
  svg << buf;
  std::snprintf(buf, sizeof buf,
                "<line class=\"reference\" x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" "
                "stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n",
                to_x(0.0), to_y(0.0), to_x(1.0), to_y(1.0));
  svg << buf;
  for (int t = 0; t <= 4; ++t) {
    const double v = t / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.3f\" y=\"%.3f\" font-size=\"10\" text-anchor=\"middle\">%.2f</text>\n",
                  to_x(v), kTop + kSide + 14.0, v);
    svg << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.3f\" y=\"%.3f\" font-size=\"10\" text-anchor=\"end\">%.2f</text>\n",
                  kLeft - 4.0, to_y(v) + 3.0, v);
    svg << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.3f\" y=\"%.3f\" font-size=\"12\" text-anchor=\"middle\">gold</text>\n",
                kLeft + kSide / 2.0, kTop + kSide + 34.0);
  svg << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"14\" y=\"%.3f\" font-size=\"12\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 14 %.3f)\">predicted</text>\n",
                kTop + kSide / 2.0, kTop + kSide / 2.0);
  svg << buf;
  if (!title.empty()) {
    svg << "<text x=\"" << kLeft + kSide / 2.0 << "\" y=\"18\" font-size=\"13\" "
        << "text-anchor=\"middle\">" << escape(title) << "</text>\n";
  }
  for (std::size_t i = 0; i < gold.size(); ++i) {
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"2\" fill=\"steelblue\" "
                  "fill-opacity=\"0.6\"/>\n",
                  to_x(gold[i]), to_y(pred[i]));
    svg << buf;
  }
  svg << "</svg>\n";
}

}  // namespace strel
