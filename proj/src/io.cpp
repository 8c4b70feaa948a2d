#include "moebius/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "moebius/error.hpp"

namespace moebius::io {

using nlohmann::json;

json field_to_json(const PeriodicField& field) {
  json samples = json::array();
  for (std::size_t j = 0; j < field.size(); ++j) samples.push_back(field.point(j));
  return json{{"dim", field.dim()}, {"samples", std::move(samples)}};
}

PeriodicField field_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("samples")) {
    throw InvalidInput("expected an object with \"dim\" and \"samples\"");
  }
  if (!doc["dim"].is_number_unsigned()) throw InvalidInput("\"dim\" must be a positive integer");
  const auto dim = doc["dim"].get<std::size_t>();
  const json& samples = doc["samples"];
  if (dim == 0) throw InvalidInput("\"dim\" must be positive");
  if (!samples.is_array()) throw InvalidInput("\"samples\" must be an array");
  const std::size_t n = samples.size();
  PeriodicField f(dim, n);
  for (std::size_t j = 0; j < n; ++j) {
    const json& p = samples[j];
    if (!p.is_array() || p.size() != dim) {
      throw InvalidInput("sample " + std::to_string(j) + " does not have " + std::to_string(dim) + " coordinates");
    }
    for (std::size_t a = 0; a < dim; ++a) {
      if (!p[a].is_number()) throw InvalidInput("sample " + std::to_string(j) + " has a non-numeric coordinate");
      f(a, j) = p[a].get<double>();
    }
  }
  return f;
}

json curve_to_json(const ClosedCurve& curve) { return field_to_json(curve.samples()); }

ClosedCurve curve_from_json(const json& doc) { return ClosedCurve(field_from_json(doc)); }

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

ClosedCurve read_curve(const std::string& path) { return curve_from_json(read_json(path)); }

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

void write_curve(const std::string& path, const ClosedCurve& curve) { write_text(path, curve_to_json(curve).dump(2)); }

json Report::to_json() const {
  return json{{"tool_version", kToolVersion}, {"config_echo", config_echo}, {"results", results}, {"timings", timings}};
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  char buf[32];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
  write_text(path, os.str());
}

namespace {

constexpr double kSize = 400.0;
constexpr double kPad = 20.0;

struct Frame {
  double x0, x1, y0, y1;

  double sx(double x) const { return kPad + (x - x0) / std::max(x1 - x0, 1e-300) * (kSize - 2 * kPad); }
  double sy(double y) const { return kSize - kPad - (y - y0) / std::max(y1 - y0, 1e-300) * (kSize - 2 * kPad); }
};

std::string polyline(const std::vector<double>& xs, const std::vector<double>& ys, const Frame& f, bool closed) {
  std::ostringstream os;
  os.precision(6);
  os << "<" << (closed ? "polygon" : "polyline") << " fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << f.sx(xs[i]) << "," << f.sy(ys[i]);
  os << "\"/>\n";
  return os.str();
}

std::string svg_document(const std::string& body) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
     << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n"
     << body << "</svg>\n";
  return os.str();
}

}  // namespace

std::string svg_curve(const ClosedCurve& curve, std::size_t i, std::size_t j) {
  if (i >= curve.dim() || j >= curve.dim()) throw InvalidInput("projection axis out of range");
  const auto xs = curve.samples().component(i);
  const auto ys = curve.samples().component(j);
  const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
  const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
  // Equal scales on both axes keep the projection undistorted.
  const double span = std::max(*xmax - *xmin, *ymax - *ymin);
  const double cx = 0.5 * (*xmin + *xmax), cy = 0.5 * (*ymin + *ymax);
  const Frame f{cx - 0.5 * span, cx + 0.5 * span, cy - 0.5 * span, cy + 0.5 * span};
  return svg_document(polyline({xs.begin(), xs.end()}, {ys.begin(), ys.end()}, f, true));
}

std::string svg_trace(const std::vector<double>& trace) {
  if (trace.empty()) return svg_document("");
  std::vector<double> xs(trace.size());
  for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = static_cast<double>(k);
  const auto [lo, hi] = std::minmax_element(trace.begin(), trace.end());
  const Frame f{0.0, std::max(1.0, xs.back()), *lo, *hi > *lo ? *hi : *lo + 1.0};
  return svg_document(polyline(xs, trace, f, false));
}

}  // namespace moebius::io
