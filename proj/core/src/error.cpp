#include "biham/error.hpp"

#include "biham/types.hpp"

namespace biham {

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

std::string_view to_string(Chart chart) {
  switch (chart) {
    case Chart::M:
      return "M";
    case Chart::Split:
      return "SPLIT";
    case Chart::UV:
      return "UV";
    case Chart::Leaf:
      return "LEAF";
  }
  return "?";
}

Point make_point(Chart chart, const std::array<cplx, 6>& coords, ScalarKind kind) {
  Point p;
  p.chart = chart;
  p.kind = kind;
  p.x = Vec(6);
  for (int i = 0; i < 6; ++i) p.x(i) = coords[static_cast<std::size_t>(i)];
  return p;
}

}  // namespace biham
