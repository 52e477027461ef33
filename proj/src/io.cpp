#include "chaindisc/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "chaindisc/errors.hpp"

namespace chaindisc::io {

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// one CSV line -> doubles; returns false for blank/comment lines
bool parse_line(const std::string& raw, std::size_t lineno,
                std::vector<double>& out) {
  std::string line = raw;
  std::size_t hash = line.find('#');
  if (hash != std::string::npos) line.resize(hash);
  line = strip(line);
  if (line.empty()) return false;

  out.clear();
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = line.find(',', pos);
    std::string cell = strip(line.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (cell.empty())
      throw config_error("csv parse error: empty cell at line " +
                         std::to_string(lineno));
    char* end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size())
      throw config_error("csv parse error: bad number '" + cell +
                         "' at line " + std::to_string(lineno));
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return true;
}

void write_double(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

}  // namespace

PointSet read_pointset(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::vector<double> vals;
  std::size_t lineno = 0, width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!parse_line(line, lineno, vals)) continue;
    if (rows.empty())
      width = vals.size();
    else if (vals.size() != width)
      throw config_error("csv parse error: ragged row at line " +
                         std::to_string(lineno));
    rows.push_back(vals);
  }
  return PointSet(std::move(rows), width);
}

void write_pointset(std::ostream& out, const PointSet& T) {
  for (std::size_t r = 0; r < T.size(); ++r) {
    for (std::size_t i = 0; i < T.dim(); ++i) {
      if (i) out << ',';
      write_double(out, T[r][i]);
    }
    out << '\n';
  }
}

PointSet load_pointset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open '" + path + "'");
  return read_pointset(in);
}

void save_pointset(const std::string& path, const PointSet& T) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write '" + path + "'");
  write_pointset(out, T);
}

Coloring read_coloring(std::istream& in) {
  std::vector<int> signs;
  std::string line;
  std::vector<double> vals;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!parse_line(line, lineno, vals)) continue;
    for (double v : vals) {
      if (v != -1.0 && v != 0.0 && v != 1.0)
        throw config_error("coloring entries must be -1, 0 or 1 (line " +
                           std::to_string(lineno) + ")");
      signs.push_back(int(v));
    }
  }
  return Coloring(std::move(signs));
}

void write_coloring(std::ostream& out, const Coloring& eta) {
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (i) out << ',';
    out << eta[i];
  }
  out << '\n';
}

Coloring load_coloring(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open '" + path + "'");
  return read_coloring(in);
}

void save_coloring(const std::string& path, const Coloring& eta) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write '" + path + "'");
  write_coloring(out, eta);
}

}  // namespace chaindisc::io
