#pragma once

#include <vector>

namespace nclab {

/// n-point Gauss-Hermite rule for the weight exp(-x^2) on the real line.
/// Nodes are ascending. Exact for polynomials of degree <= 2n-1.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussHermiteRule(int n);

    int size() const { return static_cast<int>(nodes.size()); }
};

}  // namespace nclab
