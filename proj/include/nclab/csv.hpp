#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>

namespace nclab::csv {

/// Round-trip formatting ("%.17g").
std::string num(double v);

/// Writes the values comma-separated, then a newline.
void row(std::ostream& out, std::initializer_list<double> values);

}  // namespace nclab::csv
