#include "capmon/frame_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "capmon/error.hpp"

namespace capmon {

namespace {

constexpr const char* kHeader = "t_s,i_l_a,v_out_v,v_c_v,v_mos_v";
constexpr int kColumns = 5;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

void put(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

double parse_field(const std::string& field, std::size_t line_no, int column) {
  const std::string s = trim(field);
  double v = 0.0;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": column " +
                               std::to_string(column + 1) + " is not a number: '" + s + "'");
  return v;
}

}  // namespace

void write_frame(const AcquisitionFrame& frame, std::ostream& out,
                 const std::map<std::string, double>& extra_metadata) {
  out << "# sample_rate_hz=";
  put(out, frame.sample_rate);
  out << '\n';
  for (const auto& [key, value] : extra_metadata) {
    out << "# " << key << '=';
    put(out, value);
    out << '\n';
  }
  out << kHeader << '\n';
  for (std::size_t i = 0; i < frame.size(); ++i) {
    put(out, frame.t[i]);
    out << ',';
    put(out, frame.i_l[i]);
    out << ',';
    put(out, frame.v_out[i]);
    out << ',';
    put(out, frame.v_c[i]);
    out << ',';
    put(out, frame.v_mos[i]);
    out << '\n';
  }
}

void write_frame(const AcquisitionFrame& frame, const std::filesystem::path& path,
                 const std::map<std::string, double>& extra_metadata) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Parse, "cannot open for writing: " + path.string());
  write_frame(frame, out, extra_metadata);
  if (!out) fail(ErrorKind::Parse, "write failed: " + path.string());
}

AcquisitionFrame read_frame(std::istream& in) {
  AcquisitionFrame frame;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  double meta_sample_rate = 0.0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty()) continue;
    if (body[0] == '#') {
      const std::string meta = trim(body.substr(1));
      const auto eq = meta.find('=');
      if (eq != std::string::npos && trim(meta.substr(0, eq)) == "sample_rate_hz")
        meta_sample_rate = parse_field(meta.substr(eq + 1), line_no, 0);
      continue;
    }
    if (!header_seen) {
      // Header must name all five columns in order (spaces tolerated).
      std::stringstream ss(body);
      std::string col;
      std::vector<std::string> cols;
      while (std::getline(ss, col, ',')) cols.push_back(trim(col));
      std::stringstream expect(kHeader);
      std::string want;
      std::size_t idx = 0;
      while (std::getline(expect, want, ',')) {
        if (idx >= cols.size() || cols[idx] != want)
          fail(ErrorKind::Parse,
               "line " + std::to_string(line_no) + ": missing column '" + want + "'");
        ++idx;
      }
      if (cols.size() != kColumns)
        fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected " +
                                   std::to_string(kColumns) + " columns, got " +
                                   std::to_string(cols.size()));
      header_seen = true;
      continue;
    }
    std::stringstream ss(body);
    std::string field;
    double row[kColumns];
    int col_idx = 0;
    while (std::getline(ss, field, ',')) {
      if (col_idx >= kColumns)
        fail(ErrorKind::Parse,
             "line " + std::to_string(line_no) + ": too many fields in row");
      row[col_idx] = parse_field(field, line_no, col_idx);
      ++col_idx;
    }
    if (col_idx != kColumns)
      fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(kColumns) + " fields, got " +
                                 std::to_string(col_idx));
    frame.t.push_back(row[0]);
    frame.i_l.push_back(row[1]);
    frame.v_out.push_back(row[2]);
    frame.v_c.push_back(row[3]);
    frame.v_mos.push_back(row[4]);
  }

  if (!header_seen) fail(ErrorKind::Parse, "no header line found");
  if (frame.t.size() < 2) fail(ErrorKind::Parse, "frame holds fewer than 2 samples");

  frame.sample_rate =
      meta_sample_rate > 0.0 ? meta_sample_rate : 1.0 / (frame.t[1] - frame.t[0]);
  frame.validate();
  return frame;
}

AcquisitionFrame read_frame(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open: " + path.string());
  return read_frame(in);
}

}  // namespace capmon
