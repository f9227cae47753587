#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "loewner/analysis.hpp"
#include "loewner/driver.hpp"
#include "loewner/trace.hpp"

namespace loewner {

// 17 significant digits: round-trip exact for float64.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// All CSV output is UTF-8 with LF line endings and a single header row.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& header) { out_ << header << "\n"; }

  void row(const std::vector<double>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ",";
      out_ << format_double(cells[i]);
    }
    out_ << "\n";
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << body;
  if (!f) throw std::runtime_error("write failed: " + path);
}

inline std::string driver_csv(const SampledDriver& d) {
  CsvWriter w("t,lambda");
  for (std::size_t k = 0; k < d.size(); ++k) w.row({d.times[k], d.values[k]});
  return w.str();
}

inline std::string trace_csv(const HullTrace& t) {
  CsvWriter w("t,re,im");
  for (std::size_t k = 0; k < t.size(); ++k)
    w.row({t.times[k], t.points[k].real(), t.points[k].imag()});
  return w.str();
}

inline std::string path_csv(const std::vector<double>& times,
                            const std::vector<double>& values) {
  CsvWriter w("t,value");
  for (std::size_t k = 0; k < times.size(); ++k) w.row({times[k], values[k]});
  return w.str();
}

inline std::string certificates_csv(
    const std::vector<NonSimpleCertificate>& certs) {
  CsvWriter w("T,eps,margin");
  for (const auto& c : certs) w.row({c.time, c.eps, c.margin});
  return w.str();
}

inline std::string rescale_csv(const std::vector<RescaleStats>& stats) {
  CsvWriter w("r,seed,width,hausdorff");
  for (const auto& s : stats)
    w.row({s.r, static_cast<double>(s.seed), s.width, s.hausdorff});
  return w.str();
}

inline std::string envelope_csv(const EnvelopeReport& report) {
  CsvWriter w("t,re,im,bound");
  for (const auto& v : report.violations)
    w.row({v.time, v.point.real(), v.point.imag(), v.bound});
  return w.str();
}

namespace detail {

inline std::vector<std::vector<double>> parse_csv_rows(
    const std::string& body, const std::string& expected_header) {
  std::istringstream in(body);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("csv: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected_header)
    throw std::runtime_error("csv: unexpected header '" + line + "'");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> cells;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t comma = line.find(',', pos);
      const std::string tok =
          line.substr(pos, comma == std::string::npos ? comma : comma - pos);
      cells.push_back(std::stod(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace detail

inline SampledDriver read_driver_csv(const std::string& body) {
  SampledDriver d;
  for (const auto& row : detail::parse_csv_rows(body, "t,lambda")) {
    if (row.size() != 2) throw std::runtime_error("csv: bad driver row");
    d.times.push_back(row[0]);
    d.values.push_back(row[1]);
  }
  return d;
}

inline HullTrace read_trace_csv(const std::string& body) {
  HullTrace t;
  for (const auto& row : detail::parse_csv_rows(body, "t,re,im")) {
    if (row.size() != 3) throw std::runtime_error("csv: bad trace row");
    t.times.push_back(row[0]);
    t.points.emplace_back(row[1], row[2]);
  }
  return t;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace loewner
