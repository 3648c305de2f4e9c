#pragma once

#include <string>
#include <vector>

#include "phaselift/measurement.hpp"

namespace phaselift {

// Shortest-round-trip decimal form; parses back to the identical double.
std::string fmt_double(double v);

// Measurement file: JSON with fields dim, lambda, probes (N arrays of dim
// [re, im] pairs), intensities (L arrays of N reals).
MeasurementSet read_measurement_set(const std::string& path);
void write_measurement_set(const MeasurementSet& meas, const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace phaselift
