#pragma once

// Data-parallel loops. Each kernel has a plain serial reference and an
// OpenMP version; the OpenMP versions produce bit-identical output for the
// pointwise kernels, and a thread-count-independent result for the
// quadrature reduction.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "nclab/observables.hpp"
#include "nclab/quadrature.hpp"
#include "nclab/wigner.hpp"

namespace nclab::kernels {

enum class Exec { serial, parallel };

/// Uniform grid of n points over [lo, hi] (inclusive; n = 1 gives {lo}).
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Sector energies at each Omega*t in omega_t, normalised by hbar*Omega.
SectorEnergySeries xi_series_serial(const XiModel& model, XiSource source, std::span<const double> omega_t);
SectorEnergySeries xi_series_parallel(const XiModel& model, XiSource source, std::span<const double> omega_t);
SectorEnergySeries xi_series(const XiModel& model, XiSource source, std::span<const double> omega_t,
                             Exec exec = Exec::parallel);

/// rho_{n1,n2} at each point.
std::vector<double> wigner_values_serial(std::span<const PhasePoint> pts, const QuantumNumbers& qn,
                                         const DerivedConstants& dc, double hbar);
std::vector<double> wigner_values_parallel(std::span<const PhasePoint> pts, const QuantumNumbers& qn,
                                           const DerivedConstants& dc, double hbar);
std::vector<double> wigner_values(std::span<const PhasePoint> pts, const QuantumNumbers& qn,
                                  const DerivedConstants& dc, double hbar, Exec exec = Exec::parallel);

/// stargen_residual at each point.
std::vector<std::complex<double>> residual_scan_serial(std::span<const PhasePoint> pts, const QuantumNumbers& qn,
                                                       const DerivedConstants& dc, double hbar);
std::vector<std::complex<double>> residual_scan_parallel(std::span<const PhasePoint> pts, const QuantumNumbers& qn,
                                                         const DerivedConstants& dc, double hbar);
std::vector<std::complex<double>> residual_scan(std::span<const PhasePoint> pts, const QuantumNumbers& qn,
                                                const DerivedConstants& dc, double hbar, Exec exec = Exec::parallel);

/// Integral over R^4 of f(Q1, Q2, Pi1, Pi2) with a tensor-product
/// Gauss-Hermite rule, axis k rescaled by width[k]:
///   int f = prod(width) * sum_i w_i exp(|t_i|^2) f(width * t_i).
/// Near-exact when f is exp(-sum (z_k/width_k)^2) times a polynomial.
template <typename F>
double gauss_hermite_4d_serial(F&& f, const GaussHermiteRule& rule, const std::array<double, 4>& width) {
    const int n = rule.size();
    double sum = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const double ta = rule.nodes[a], tb = rule.nodes[b], tc = rule.nodes[c], td = rule.nodes[d];
                    const double w = rule.weights[a] * rule.weights[b] * rule.weights[c] * rule.weights[d] *
                                     std::exp(ta * ta + tb * tb + tc * tc + td * td);
                    sum += w * f(PhasePoint{width[0] * ta, width[1] * tb, width[2] * tc, width[3] * td});
                }
    return sum * width[0] * width[1] * width[2] * width[3];
}

/// Same rule; the outer axis is split across threads and the per-slab
/// partial sums are added in order, so the result does not depend on the
/// thread count.
template <typename F>
double gauss_hermite_4d_parallel(F&& f, const GaussHermiteRule& rule, const std::array<double, 4>& width) {
    const int n = rule.size();
    std::vector<double> partial(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel for schedule(static)
    for (int a = 0; a < n; ++a) {
        double slab = 0.0;
        const double ta = rule.nodes[a];
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const double tb = rule.nodes[b], tc = rule.nodes[c], td = rule.nodes[d];
                    const double w = rule.weights[a] * rule.weights[b] * rule.weights[c] * rule.weights[d] *
                                     std::exp(ta * ta + tb * tb + tc * tc + td * td);
                    slab += w * f(PhasePoint{width[0] * ta, width[1] * tb, width[2] * tc, width[3] * td});
                }
        partial[static_cast<std::size_t>(a)] = slab;
    }
    double sum = 0.0;
    for (double s : partial) sum += s;
    return sum * width[0] * width[1] * width[2] * width[3];
}

template <typename F>
double gauss_hermite_4d(F&& f, const GaussHermiteRule& rule, const std::array<double, 4>& width,
                        Exec exec = Exec::parallel) {
    return exec == Exec::serial ? gauss_hermite_4d_serial(f, rule, width) : gauss_hermite_4d_parallel(f, rule, width);
}

/// Integral of rho_a * rho_b (or rho_a alone when b is null) over phase space.
double wigner_overlap(const QuantumNumbers& a, const QuantumNumbers* b, const DerivedConstants& dc, double hbar,
                      int nodes, Exec exec = Exec::parallel);

}  // namespace nclab::kernels
