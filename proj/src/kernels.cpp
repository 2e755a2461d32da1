#include "nclab/kernels.hpp"

#include <cmath>

namespace nclab::kernels {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) out[k] = lo + step * static_cast<double>(k);
    if (n > 1) out.back() = hi;
    return out;
}

namespace {

SectorEnergySeries empty_series(XiSource source, std::span<const double> omega_t) {
    SectorEnergySeries s;
    s.source = source;
    s.times.assign(omega_t.begin(), omega_t.end());
    s.xi1.resize(omega_t.size());
    s.xi2.resize(omega_t.size());
    return s;
}

}  // namespace

SectorEnergySeries xi_series_serial(const XiModel& model, XiSource source, std::span<const double> omega_t) {
    SectorEnergySeries s = empty_series(source, omega_t);
    const double W = model.dc.omega_big;
    const double unit = model.params.hbar * W;
    for (std::size_t k = 0; k < omega_t.size(); ++k) {
        const double t = omega_t[k] / W;
        s.xi1[k] = model.evaluate(source, t, Sector::one) / unit;
        s.xi2[k] = model.evaluate(source, t, Sector::two) / unit;
    }
    return s;
}

SectorEnergySeries xi_series_parallel(const XiModel& model, XiSource source, std::span<const double> omega_t) {
    SectorEnergySeries s = empty_series(source, omega_t);
    const double W = model.dc.omega_big;
    const double unit = model.params.hbar * W;
    // Validate once outside the parallel region so errors surface as exceptions.
    if (!omega_t.empty()) model.evaluate(source, omega_t[0] / W, Sector::one);
    const auto n = static_cast<std::ptrdiff_t>(omega_t.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const double t = omega_t[static_cast<std::size_t>(k)] / W;
        s.xi1[static_cast<std::size_t>(k)] = model.evaluate(source, t, Sector::one) / unit;
        s.xi2[static_cast<std::size_t>(k)] = model.evaluate(source, t, Sector::two) / unit;
    }
    return s;
}

SectorEnergySeries xi_series(const XiModel& model, XiSource source, std::span<const double> omega_t, Exec exec) {
    return exec == Exec::serial ? xi_series_serial(model, source, omega_t)
                                : xi_series_parallel(model, source, omega_t);
}

std::vector<double> wigner_values_serial(std::span<const PhasePoint> pts, const QuantumNumbers& qn,
                                         const DerivedConstants& dc, double hbar) {
    std::vector<double> out(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) out[k] = wigner_eigenfunction(pts[k], qn, dc, hbar);
    return out;
}

std::vector<double> wigner_values_parallel(std::span<const PhasePoint> pts, const QuantumNumbers& qn,
                                           const DerivedConstants& dc, double hbar) {
    std::vector<double> out(pts.size());
    if (pts.empty()) return out;
    wigner_eigenfunction(pts[0], qn, dc, hbar);
    const auto n = static_cast<std::ptrdiff_t>(pts.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        out[i] = wigner_eigenfunction(pts[i], qn, dc, hbar);
    }
    return out;
}

std::vector<double> wigner_values(std::span<const PhasePoint> pts, const QuantumNumbers& qn,
                                  const DerivedConstants& dc, double hbar, Exec exec) {
    return exec == Exec::serial ? wigner_values_serial(pts, qn, dc, hbar) : wigner_values_parallel(pts, qn, dc, hbar);
}

std::vector<std::complex<double>> residual_scan_serial(std::span<const PhasePoint> pts, const QuantumNumbers& qn,
                                                       const DerivedConstants& dc, double hbar) {
    std::vector<std::complex<double>> out(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) out[k] = stargen_residual(pts[k], qn, dc, hbar);
    return out;
}

std::vector<std::complex<double>> residual_scan_parallel(std::span<const PhasePoint> pts, const QuantumNumbers& qn,
                                                         const DerivedConstants& dc, double hbar) {
    std::vector<std::complex<double>> out(pts.size());
    if (pts.empty()) return out;
    stargen_residual(pts[0], qn, dc, hbar);
    const auto n = static_cast<std::ptrdiff_t>(pts.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        out[i] = stargen_residual(pts[i], qn, dc, hbar);
    }
    return out;
}

std::vector<std::complex<double>> residual_scan(std::span<const PhasePoint> pts, const QuantumNumbers& qn,
                                                const DerivedConstants& dc, double hbar, Exec exec) {
    return exec == Exec::serial ? residual_scan_serial(pts, qn, dc, hbar) : residual_scan_parallel(pts, qn, dc, hbar);
}

double wigner_overlap(const QuantumNumbers& a, const QuantumNumbers* b, const DerivedConstants& dc, double hbar,
                      int nodes, Exec exec) {
    const GaussHermiteRule rule(nodes);
    const GaussianWidths w = gaussian_widths(dc, hbar);
    // A product of two stargenfunctions carries exp(-2S/hbar).
    const double shrink = b ? 1.0 / std::sqrt(2.0) : 1.0;
    const std::array<double, 4> width{w.q * shrink, w.q * shrink, w.p * shrink, w.p * shrink};
    if (b) {
        const QuantumNumbers qb = *b;
        auto f = [&](const PhasePoint& p) {
            return wigner_eigenfunction(p, a, dc, hbar) * wigner_eigenfunction(p, qb, dc, hbar);
        };
        return gauss_hermite_4d(f, rule, width, exec);
    }
    auto f = [&](const PhasePoint& p) { return wigner_eigenfunction(p, a, dc, hbar); };
    return gauss_hermite_4d(f, rule, width, exec);
}

}  // namespace nclab::kernels
