#include "nclab/csv.hpp"

#include <cstdio>
#include <ostream>

namespace nclab::csv {

std::string num(double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

void row(std::ostream& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out << ',';
        out << num(v);
        first = false;
    }
    out << '\n';
}

}  // namespace nclab::csv
