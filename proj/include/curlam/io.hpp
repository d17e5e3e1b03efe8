#pragma once

// Field import/export: CSV (the canonical numeric format, full precision),
// legacy VTK for viewers, OFF for surface meshes.

#include <string>

#include "curlam/domain.hpp"
#include "curlam/surface_mesh.hpp"

namespace curlam::io {

// Header exactly
//   x,y,z,re_w0,im_w0,re_w1,im_w1,re_w2,im_w2,re_w3,im_w3
// one row per point in sample order, every number printed with %.17g so a
// round trip is bit-exact.
void write_csv(const FieldSample& s, const std::string& path);
FieldSample read_csv(const std::string& path);

// Legacy ASCII STRUCTURED_POINTS over the sample's full lattice box with six
// scalar arrays (re/im per vector component); lattice nodes absent from the
// sample are written as zeros. Requires a lattice-tagged sample.
void write_vtk(const FieldSample& s, const std::string& path,
               const std::string& title);

void write_off(const surf::SurfaceMesh& mesh, const std::string& path);

}  // namespace curlam::io
