#include "curlam/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "curlam/errors.hpp"

namespace curlam::io {

namespace {

const char kCsvHeader[] =
    "x,y,z,re_w0,im_w0,re_w1,im_w1,re_w2,im_w2,re_w3,im_w3";

// %.17g is the shortest fixed format that round-trips an IEEE double.
void append_num(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);  // binary: no newline translation
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

}  // namespace

void write_csv(const FieldSample& s, const std::string& path) {
  std::ofstream f = open_out(path);
  std::string line;
  f << kCsvHeader << '\n';
  for (std::size_t r = 0; r < s.size(); ++r) {
    line.clear();
    const Pt p = s.points[r];
    const Biquaternion& w = s.values[r];
    const double cols[11] = {p.x,         p.y,         p.z,
                             w.w0.real(), w.w0.imag(), w.w1.real(),
                             w.w1.imag(), w.w2.real(), w.w2.imag(),
                             w.w3.real(), w.w3.imag()};
    for (int c = 0; c < 11; ++c) {
      if (c) line += ',';
      append_num(line, cols[c]);
    }
    line += '\n';
    f << line;
  }
  if (!f) throw IoError("write failed for '" + path + "'");
}

FieldSample read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(f, line)) throw IoError("empty CSV file '" + path + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw IoError("unexpected CSV header in '" + path + "' (expected \"" +
                  kCsvHeader + "\")");
  FieldSample s;
  s.kind = FieldKind::full;
  std::size_t row = 1;
  while (std::getline(f, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double cols[11];
    const char* ptr = line.c_str();
    for (int c = 0; c < 11; ++c) {
      char* end = nullptr;
      cols[c] = std::strtod(ptr, &end);
      if (end == ptr)
        throw IoError("bad number in '" + path + "' line " + std::to_string(row));
      ptr = end;
      if (c < 10) {
        if (*ptr != ',')
          throw IoError("expected ',' in '" + path + "' line " + std::to_string(row));
        ++ptr;
      }
    }
    s.points.push_back({cols[0], cols[1], cols[2]});
    s.values.push_back({cplx(cols[3], cols[4]), cplx(cols[5], cols[6]),
                        cplx(cols[7], cols[8]), cplx(cols[9], cols[10])});
  }
  return s;
}

void write_vtk(const FieldSample& s, const std::string& path,
               const std::string& title) {
  if (!s.grid)
    throw PreconditionError("VTK export needs a lattice-tagged sample");
  const PointGrid& g = *s.grid;
  const auto& d = g.meta.dims;
  std::ofstream f = open_out(path);
  std::string head;
  f << "# vtk DataFile Version 3.0\n" << title << "\nASCII\n";
  f << "DATASET STRUCTURED_POINTS\n";
  f << "DIMENSIONS " << d[0] << ' ' << d[1] << ' ' << d[2] << '\n';
  head.clear();
  head += "ORIGIN ";
  append_num(head, g.meta.origin.x);
  head += ' ';
  append_num(head, g.meta.origin.y);
  head += ' ';
  append_num(head, g.meta.origin.z);
  head += "\nSPACING ";
  append_num(head, g.meta.h);
  head += ' ';
  append_num(head, g.meta.h);
  head += ' ';
  append_num(head, g.meta.h);
  head += '\n';
  f << head;
  const std::size_t total =
      static_cast<std::size_t>(d[0]) * d[1] * d[2];
  f << "POINT_DATA " << total << '\n';

  const char* names[6] = {"re_w1", "im_w1", "re_w2", "im_w2", "re_w3", "im_w3"};
  for (int a = 0; a < 6; ++a) {
    f << "SCALARS " << names[a] << " double 1\nLOOKUP_TABLE default\n";
    std::string body;
    body.reserve(total * 12);
    for (std::size_t slot = 0; slot < total; ++slot) {
      double v = 0;
      const int r = g.slots[slot];
      if (r >= 0) {
        const Biquaternion& w = s.values[static_cast<std::size_t>(r)];
        const cplx comp = a < 2 ? w.w1 : (a < 4 ? w.w2 : w.w3);
        v = (a % 2 == 0) ? comp.real() : comp.imag();
      }
      append_num(body, v);
      body += '\n';
    }
    f << body;
  }
  if (!f) throw IoError("write failed for '" + path + "'");
}

void write_off(const surf::SurfaceMesh& mesh, const std::string& path) {
  std::ofstream f = open_out(path);
  f << "OFF\n" << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
  std::string line;
  for (const Pt& v : mesh.vertices) {
    line.clear();
    append_num(line, v.x);
    line += ' ';
    append_num(line, v.y);
    line += ' ';
    append_num(line, v.z);
    line += '\n';
    f << line;
  }
  for (const auto& t : mesh.triangles)
    f << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  if (!f) throw IoError("write failed for '" + path + "'");
}

}  // namespace curlam::io
