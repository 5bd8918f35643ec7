#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cantorcalc/set.hpp"

namespace cantorcalc {

/// Shortest decimal form carrying 17 significant digits (round-trips a
/// double exactly).
std::string fmt17(double value);

/// Header row plus one row per record; every number via fmt17. Output is a
/// pure function of the data, so equal inputs give byte-equal files.
void write_csv(std::ostream& os, std::span<const std::string> header,
               std::span<const std::vector<double>> rows);

/// Interval lists of every construction level 0..params.depth with columns
/// depth,index,left,right.
void write_interval_table(std::ostream& os, const CantorParams& params);

}  // namespace cantorcalc
