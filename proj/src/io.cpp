#include "phaselift/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "phaselift/errors.hpp"

namespace phaselift {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  return buf;
}

namespace {

json complex_to_json(const cd& v) { return json::array({v.real(), v.imag()}); }

cd json_to_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw IoError("measurement file: complex entries must be [re, im] pairs");
  return cd(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

MeasurementSet read_measurement_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open measurement file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("measurement file " + path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("lambda") ||
      !j.contains("probes") || !j.contains("intensities"))
    throw IoError("measurement file " + path +
                  ": needs fields dim, lambda, probes, intensities");
  MeasurementSet meas;
  try {
    meas.dim = j["dim"].get<std::size_t>();
    meas.lambda = j["lambda"].get<double>();
    for (const json& jp : j["probes"]) {
      CVec x;
      for (const json& je : jp) x.push_back(json_to_complex(je));
      meas.probes.push_back(std::move(x));
    }
    for (const json& jr : j["intensities"])
      meas.intensities.push_back(jr.get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw IoError("measurement file " + path + ": " + e.what());
  }
  try {
    meas.validate();
  } catch (const ConfigError& e) {
    throw IoError("measurement file " + path + ": " + e.what());
  }
  return meas;
}

void write_measurement_set(const MeasurementSet& meas, const std::string& path) {
  json j;
  j["dim"] = meas.dim;
  j["lambda"] = meas.lambda;
  json probes = json::array();
  for (const CVec& x : meas.probes) {
    json jx = json::array();
    for (const cd& v : x) jx.push_back(complex_to_json(v));
    probes.push_back(std::move(jx));
  }
  j["probes"] = std::move(probes);
  j["intensities"] = meas.intensities;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write measurement file: " + path);
  out << j.dump(1) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write csv file: " + path);
  std::size_t col = 0;
  for (const std::string& h : header) out << (col++ ? "," : "") << h;
  out << '\n';
  for (const std::vector<std::string>& row : rows) {
    if (row.size() != header.size())
      throw IoError("csv row width mismatch in " + path);
    col = 0;
    for (const std::string& cell : row) out << (col++ ? "," : "") << cell;
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace phaselift
