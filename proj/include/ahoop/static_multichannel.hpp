#pragma once

// Static-hoop matching for an incoming exterior P wave.
//
// Interior waves j_n(k_n r) P_n (even n <= N) are matched to the exterior
// field
//     h1^(2)(k_1 r) P_1 + sum_{odd l <= L} c_l u_l(r) P_l ,
// where u_l is the outgoing Hankel function h_l^(1)(k_l r) for an open
// channel and k_l(kappa_l r) for a closed one. Projecting onto each interior
// P_n over the upper hemisphere gives one logarithmic-derivative condition
// per interior channel, weighted by the overlaps O_{n,l}:
//
//   sum_l c_l O_{n,l} [ j_n u_l' - k_n j_n' u_l ] = -O_{n,1} [ j_n h2' - k_n j_n' h2 ]
//
// (cross-multiplied so the rows stay finite at zeros of j_n). With
// L = N + 1 there are (N+2)/2 equations for (N+2)/2 unknowns.

#include "ahoop/errors.hpp"
#include "ahoop/model.hpp"
#include "ahoop/specfun.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace ahoop {

struct TruncationScheme {
    int N = 0; // largest even interior index
    int L = 1; // largest odd exterior index

    void validate() const {
        if (N < 0 || N % 2 != 0) throw std::invalid_argument("truncation: N must be even and non-negative");
        if (L < 1 || L % 2 != 1) throw std::invalid_argument("truncation: L must be odd and positive");
        if (L != N + 1)
            throw std::invalid_argument("truncation: (N+2)/2 interior channels must equal (L+1)/2 exterior channels (L = N + 1)");
    }

    static TruncationScheme from_L(int L) {
        TruncationScheme t{L - 1, L};
        t.validate();
        return t;
    }

    int channels() const { return N / 2 + 1; }
};

struct AmplitudeSet {
    double energy_over_w = 0.0;
    double k1R = 0.0;
    TruncationScheme truncation;
    std::vector<std::complex<double>> c; // c[j] multiplies the l = 2j+1 wave
    std::complex<double> s;              // c_1
    double delta = 0.0;                  // S = exp(2 i delta) exp(-chi)
    double chi = 0.0;
    double elasticity = 0.0;             // |c_1|^2 = j_1^out / j_1^in
    double higher_flux = 0.0;            // sum_{l > 1} |c_l|^2
    double reciprocal_condition = 0.0;
    double relative_residual = 0.0;

    std::complex<double> amplitude(int l) const { return c.at(static_cast<std::size_t>(l / 2)); }
};

namespace detail {

struct ExteriorWave {
    std::complex<double> value;
    std::complex<double> slope; // d/dr at r = R
};

inline ExteriorWave outgoing_wave(double mass_ratio, int l, double e) {
    const ChannelWavenumber kw = wavenumber_R(mass_ratio, Channel::exterior(l), e);
    if (kw.kind == WaveKind::propagating) {
        const ComplexRadialValue h = sph_h1(l, kw.magnitude);
        return {h.value, kw.magnitude * h.derivative};
    }
    const RadialValue k = sph_k(l, kw.magnitude);
    return {k.value, kw.magnitude * k.derivative};
}

} // namespace detail

/// Solves the static-hoop matching system at e = E/W > 1 for truncation
/// (N, L). All interior channels must be open. Throws SolverError when the
/// matrix is numerically singular.
inline AmplitudeSet solve_static_system(const ModelParams& p, double e_over_w, const TruncationScheme& trunc,
                                        const OverlapTable* table = nullptr) {
    p.validate();
    trunc.validate();
    if (!(e_over_w > 1.0))
        throw std::domain_error("solve_static_system: the incident P wave needs E/W > 1");
    const double ratio = p.mass_ratio();
    for (int n = 0; n <= trunc.N; n += 2) {
        const ChannelWavenumber kw = wavenumber_R(ratio, Channel::interior(n), e_over_w);
        if (kw.kind != WaveKind::propagating || kw.magnitude == 0.0)
            throw std::domain_error("solve_static_system: interior channel n=" + std::to_string(n) +
                                    " is closed at this energy");
    }
    // Out-of-table entries are computed on demand, so a small default is fine.
    const OverlapTable local(table ? 0 : trunc.N, table ? 1 : trunc.L);
    const OverlapTable& O = table ? *table : local;

    const int dim = trunc.channels();
    Eigen::MatrixXcd A(dim, dim);
    Eigen::VectorXcd rhs(dim);

    const double k1 = wavenumber_R(ratio, Channel::exterior(1), e_over_w).magnitude;
    const ComplexRadialValue h2 = sph_h2(1, k1);
    std::vector<detail::ExteriorWave> waves;
    for (int l = 1; l <= trunc.L; l += 2) waves.push_back(detail::outgoing_wave(ratio, l, e_over_w));

    for (int row = 0; row < dim; ++row) {
        const int n = 2 * row;
        const double kn = wavenumber_R(ratio, Channel::interior(n), e_over_w).magnitude;
        const RadialValue jn = sph_j(n, kn);
        const double value = jn.value;
        const double slope = kn * jn.derivative;
        for (int col = 0; col < dim; ++col) {
            const int l = 2 * col + 1;
            A(row, col) = O(n, l) * (value * waves[col].slope - slope * waves[col].value);
        }
        rhs(row) = -O(n, 1) * (value * k1 * h2.derivative - slope * h2.value);
    }

    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14))
        throw SolverError("solve_static_system: matching matrix is singular (reciprocal condition " +
                          std::to_string(rcond) + ")");
    const Eigen::VectorXcd x = lu.solve(rhs);

    AmplitudeSet out;
    out.energy_over_w = e_over_w;
    out.k1R = k1;
    out.truncation = trunc;
    out.c.assign(x.data(), x.data() + x.size());
    out.s = out.c.front();
    out.elasticity = std::norm(out.s);
    out.chi = -0.5 * std::log(out.elasticity);
    double d = 0.5 * std::arg(out.s);
    if (d < 0) d += std::numbers::pi;
    out.delta = d;
    for (std::size_t j = 1; j < out.c.size(); ++j) out.higher_flux += std::norm(out.c[j]);
    out.reciprocal_condition = rcond;
    const double scale = A.norm() * x.norm();
    out.relative_residual = scale > 0 ? (A * x - rhs).norm() / scale : 0.0;
    return out;
}

/// E/W at which the exterior P wave has wavenumber k_1 R.
inline double energy_for_k1R(const ModelParams& p, double k1R) {
    // (k_1 R)^2 = 2 (m_mu/m_H) (2e - 2)
    return 1.0 + k1R * k1R / (4.0 * p.mass_ratio());
}

/// Residual of the large-argument matching relation
///     k_n tan(k_n R - (n+1) pi/2) = k_1 tan(k_1 R - pi/2)
/// cross-multiplied by the two cosines and divided by k_1, so it stays
/// bounded through the tangent poles.
inline double tangent_relation_residual(int n, double knR, double k1R) {
    const double a = knR - 0.5 * std::numbers::pi * (n + 1);
    const double b = k1R - 0.5 * std::numbers::pi;
    return (knR * std::sin(a) * std::cos(b) - k1R * std::cos(a) * std::sin(b)) / k1R;
}

struct ChannelResidual {
    int n = 0;
    double knR = 0.0;
    double asymptotic = 0.0; // tangent_relation_residual
    double exact = 0.0;      // same cross-multiplied form with exact Bessel functions
};

/// Per-interior-channel residuals of the matching conditions under the
/// high-energy candidate c_1 = -1, c_{l>1} = 0. With c_1 = -1 the exterior P
/// wave is h2 - h1 = -2i y_1, so the exact condition compares j_n against
/// y_1; the exact column is scaled by (k_n R)(k_1 R) to match the
/// asymptotic one.
inline std::vector<ChannelResidual> asymptotic_check(const ModelParams& p, double e_over_w,
                                                     const TruncationScheme& trunc) {
    p.validate();
    trunc.validate();
    const double ratio = p.mass_ratio();
    const double k1 = wavenumber_R(ratio, Channel::exterior(1), e_over_w).magnitude;
    if (!(e_over_w > 1.0)) throw std::domain_error("asymptotic_check: needs E/W > 1");
    const RadialValue y1 = sph_y(1, k1);
    std::vector<ChannelResidual> out;
    for (int n = 0; n <= trunc.N; n += 2) {
        const ChannelWavenumber kw = wavenumber_R(ratio, Channel::interior(n), e_over_w);
        if (kw.kind != WaveKind::propagating)
            throw std::domain_error("asymptotic_check: interior channel closed");
        const double kn = kw.magnitude;
        const RadialValue jn = sph_j(n, kn);
        ChannelResidual r;
        r.n = n;
        r.knR = kn;
        r.asymptotic = tangent_relation_residual(n, kn, k1);
        r.exact = (kn * jn.derivative * y1.value - k1 * jn.value * y1.derivative) * kn;
        out.push_back(r);
    }
    return out;
}

} // namespace ahoop
