#include "cantorcalc/csv.hpp"

#include <cstdio>

namespace cantorcalc {

std::string fmt17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv(std::ostream& os, std::span<const std::string> header,
               std::span<const std::vector<double>> rows) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) os << ',';
    os << header[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << fmt17(row[i]);
    }
    os << '\n';
  }
}

void write_interval_table(std::ostream& os, const CantorParams& params) {
  os << "depth,index,left,right\n";
  for (int k = 0; k <= params.depth; ++k) {
    CantorParams p = params;
    p.depth = k;
    const PreFractal set = build_prefractal(p);
    int index = 0;
    for (const Interval& iv : set.intervals()) {
      os << k << ',' << index++ << ',' << fmt17(iv.left) << ','
         << fmt17(iv.right) << '\n';
    }
  }
}

}  // namespace cantorcalc
