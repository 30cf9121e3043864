#ifndef FRECHET_PMF_IO_HPP
#define FRECHET_PMF_IO_HPP

#include "frechet/frechet_class.hpp"

#include <iosfwd>
#include <map>
#include <string>

namespace frechet {

// Pmf text format: one "bits value" pair per line, e.g. "110 1/5", where the
// first character of bits is coordinate 1. Omitted points carry zero mass.
// Blank lines and lines starting with '#' are ignored.

/// Raw masses as written; throws std::invalid_argument on syntax errors
/// (with the line number) and on repeated points.
std::map<Bits, Rat> read_mass(std::istream& in);
std::map<Bits, Rat> read_mass_file(const std::string& path);

/// read_mass followed by validate_pmf.
Pmf read_pmf(const FrechetClass& cls, std::istream& in);
Pmf read_pmf_file(const FrechetClass& cls, const std::string& path);

/// Support points in reverse-lexicographic order.
void write_pmf(std::ostream& out, const Pmf& pmf);
std::string pmf_text(const Pmf& pmf);

}  // namespace frechet

#endif  // FRECHET_PMF_IO_HPP
