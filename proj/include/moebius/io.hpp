#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "moebius/field.hpp"

namespace moebius::io {

inline constexpr const char* kToolVersion = "1.0.0";

/// { "dim": d, "samples": [[x_1..x_d], ...] } with one entry per grid node.
nlohmann::json curve_to_json(const ClosedCurve& curve);
/// Throws InvalidInput for malformed documents; ClosedCurve validates the rest.
ClosedCurve curve_from_json(const nlohmann::json& doc);

ClosedCurve read_curve(const std::string& path);
void write_curve(const std::string& path, const ClosedCurve& curve);

/// Same layout as curves but without the curve invariants.
nlohmann::json field_to_json(const PeriodicField& field);
PeriodicField field_from_json(const nlohmann::json& doc);

nlohmann::json read_json(const std::string& path);
/// Writes to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

struct Report {
  nlohmann::json config_echo = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json timings = nlohmann::json::object();

  nlohmann::json to_json() const;
};

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Orthogonal projection of the curve onto coordinates (i, j), as a closed polyline.
std::string svg_curve(const ClosedCurve& curve, std::size_t i = 0, std::size_t j = 1);
/// Energy against step index.
std::string svg_trace(const std::vector<double>& trace);

}  // namespace moebius::io
