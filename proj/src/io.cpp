#include "discrepancy/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "discrepancy/compensated_sum.hpp"
#include "discrepancy/error.hpp"

namespace disc {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

// Calls `row` with (line number, numbers) for every data line.
template <class Row>
void for_each_row(std::istream& in, Row&& row) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> values;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p == end) break;
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc() || (res.ptr < end && *res.ptr != ' ' && *res.ptr != '\t' && *res.ptr != '\r')) {
        const char* stop = p;
        while (stop < end && *stop != ' ' && *stop != '\t') ++stop;
        throw ParseError(number, "not a number: '" + std::string(p, stop) + "'");
      }
      if (!std::isfinite(v)) throw ParseError(number, "non-finite value");
      values.push_back(v);
      p = res.ptr;
    }
    row(number, values);
  }
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return in;
}

}  // namespace

PointSet parse_pointset(std::istream& in) {
  std::size_t d = 0;
  std::vector<double> coords;
  for_each_row(in, [&](std::size_t line, const std::vector<double>& v) {
    if (d == 0) d = v.size();
    if (v.size() != d) {
      throw ParseError(line, "expected " + std::to_string(d) + " coordinates, found " + std::to_string(v.size()));
    }
    for (double c : v) {
      if (!(c >= 0.0 && c < 1.0)) throw ParseError(line, "coordinate " + format_double(c) + " outside [0,1)");
    }
    coords.insert(coords.end(), v.begin(), v.end());
  });
  if (coords.empty()) throw InvalidArgument("no points");
  return PointSet(d, std::move(coords));
}

PointSet read_pointset(const std::string& path) {
  auto in = open(path);
  return parse_pointset(in);
}

void write_pointset(std::ostream& out, const PointSet& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.dim(); ++j) out << (j ? " " : "") << format_double(x(i, j));
    out << '\n';
  }
}

DiscreteMeasure parse_measure(std::istream& in) {
  std::size_t d = 0;
  std::vector<double> coords;
  std::vector<double> probs;
  CompensatedSum total;
  for_each_row(in, [&](std::size_t line, const std::vector<double>& v) {
    if (v.size() < 2) throw ParseError(line, "expected a probability and at least one coordinate");
    if (d == 0) d = v.size() - 1;
    if (v.size() != d + 1) {
      throw ParseError(line, "expected " + std::to_string(d) + " coordinates, found " + std::to_string(v.size() - 1));
    }
    if (!(v[0] >= 0.0)) throw ParseError(line, "negative probability");
    for (std::size_t j = 1; j <= d; ++j) {
      if (!(v[j] >= 0.0 && v[j] <= 1.0)) throw ParseError(line, "coordinate " + format_double(v[j]) + " outside [0,1]");
    }
    probs.push_back(v[0]);
    total.add(v[0]);
    coords.insert(coords.end(), v.begin() + 1, v.end());
  });
  if (probs.empty()) throw InvalidArgument("no atoms");
  if (std::fabs(total.value() - 1.0) > 1e-9) {
    throw InvalidArgument("probabilities sum to " + format_double(total.value()) + ", not 1");
  }
  return DiscreteMeasure::normalized(d, std::move(coords), std::move(probs));
}

DiscreteMeasure read_measure(const std::string& path) {
  auto in = open(path);
  return parse_measure(in);
}

void write_measure(std::ostream& out, const DiscreteMeasure& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << format_double(m.probability(i));
    for (double c : m.atom(i)) out << ' ' << format_double(c);
    out << '\n';
  }
}

MarginalCDF parse_gstar(std::istream& in) {
  std::vector<MarginalCDF::Table> tables;
  for_each_row(in, [&](std::size_t line, const std::vector<double>& v) {
    if (v.size() != 3) throw ParseError(line, "expected 'axis x F'");
    const double axis = v[0];
    if (axis < 0.0 || axis != std::floor(axis) || axis > 1e6) throw ParseError(line, "axis must be a small integer");
    const auto j = static_cast<std::size_t>(axis);
    if (j >= tables.size()) tables.resize(j + 1);
    tables[j].emplace_back(v[1], v[2]);
  });
  if (tables.empty()) throw InvalidArgument("no knots");
  for (std::size_t j = 0; j < tables.size(); ++j) {
    if (tables[j].empty()) throw InvalidArgument("axis " + std::to_string(j) + " has no knots");
  }
  return MarginalCDF(std::move(tables));
}

MarginalCDF read_gstar(const std::string& path) {
  auto in = open(path);
  return parse_gstar(in);
}

PermutationConfig parse_permutations(std::istream& in) {
  std::vector<Permutation> perms;
  for_each_row(in, [&](std::size_t line, const std::vector<double>& v) {
    const auto primes = first_primes(perms.size() + 1);
    const std::uint32_t p = primes.back();
    if (v.empty() || v[0] != static_cast<double>(p)) {
      throw ParseError(line, "expected base " + std::to_string(p) + " first");
    }
    if (v.size() != p + 1) throw ParseError(line, "expected " + std::to_string(p) + " permutation entries");
    Permutation perm;
    for (std::size_t k = 1; k < v.size(); ++k) {
      if (v[k] < 0.0 || v[k] != std::floor(v[k]) || v[k] >= p) throw ParseError(line, "bad permutation entry");
      perm.push_back(static_cast<std::uint32_t>(v[k]));
    }
    try {
      validate_permutation(perm, p);
    } catch (const InvalidArgument& e) {
      throw ParseError(line, e.what());
    }
    perms.push_back(std::move(perm));
  });
  if (perms.empty()) throw InvalidArgument("no permutations");
  return PermutationConfig(std::move(perms));
}

PermutationConfig read_permutations(const std::string& path) {
  auto in = open(path);
  return parse_permutations(in);
}

void write_permutations(std::ostream& out, const PermutationConfig& perms) {
  const auto primes = first_primes(perms.dim());
  for (std::size_t j = 0; j < perms.dim(); ++j) {
    out << primes[j];
    for (std::uint32_t v : perms[j]) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace disc
