#pragma once

#include <iosfwd>
#include <string>

#include "discrepancy/generators.hpp"
#include "discrepancy/linf_exact.hpp"
#include "discrepancy/point_set.hpp"
#include "discrepancy/scenario.hpp"

namespace disc {

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

// Text formats. Lines starting with '#' and blank lines are ignored; errors
// are ParseError carrying the 1-based line number.

/// One point per line, d whitespace-separated reals in [0,1).
PointSet parse_pointset(std::istream& in);
PointSet read_pointset(const std::string& path);
void write_pointset(std::ostream& out, const PointSet& x);

/// One atom per line: probability, then d coordinates in [0,1]. The
/// probabilities must sum to 1 within 1e-9 and are then renormalized.
DiscreteMeasure parse_measure(std::istream& in);
DiscreteMeasure read_measure(const std::string& path);
void write_measure(std::ostream& out, const DiscreteMeasure& m);

/// Knots of the marginal distribution functions, one "axis x F" per line
/// with 0-based axis; axes must be 0..d-1 without gaps.
MarginalCDF parse_gstar(std::istream& in);
MarginalCDF read_gstar(const std::string& path);

/// One base per line: "p pi(0) pi(1) ... pi(p-1)", bases in prime order.
PermutationConfig parse_permutations(std::istream& in);
PermutationConfig read_permutations(const std::string& path);
void write_permutations(std::ostream& out, const PermutationConfig& perms);

}  // namespace disc
