#pragma once

#include <complex>

#include "linalg.hpp"
#include "steadystate.hpp"

namespace omit {

struct Susceptibilities {
    cd sigma1; // kappa + i Delta - i z
    cd sigma2; // kappa - i Delta - i z
    cd chi;    // m (omega_m^2 - i Gamma_m z - z^2)
};

// Memory-kernel counterparts. Lambda multiplies the optical terms of the first row and
// Lambda_conj those of the conjugate row; they coincide for the printed closure.
struct MemorySusceptibilities {
    cd Lambda;
    cd Lambda_conj;
    cd sigma1;
    cd sigma2;
    cd chi;
};

struct FirstOrder {
    cd A1_plus, A1_minus, X1_plus;
    double cond = 0;
};

struct SecondOrder {
    cd A2_plus, A2_minus, X2_plus;
    double cond = 0;
};

struct SidebandSolution {
    cd A1_plus, A1_minus, X1_plus;
    cd A2_plus, A2_minus, X2_plus;
    double Delta_p = 0;
    Regime regime = Regime::Plain;
    SteadyState steady;
    double cond1 = 0, cond2 = 0;

    cd X1_minus() const { return std::conj(X1_plus); }
    cd X2_minus() const { return std::conj(X2_plus); }
};

inline cd mechanical_chi(const PhysParams& p, int order, double Delta_p)
{
    const double z = order * Delta_p;
    const double q = p.variants.chi == ChiArgument::Response ? z : Delta_p;
    return p.m * cd(p.omega_m * p.omega_m - q * q, -p.Gamma_m * z);
}

inline Susceptibilities susceptibilities(int order, double Delta_p, const SteadyState& s, const Model& M)
{
    const double k = M.der.kappa;
    const double z = order * Delta_p;
    return {cd(k, s.Delta_eff - z), cd(k, -s.Delta_eff - z), mechanical_chi(M.phys, order, Delta_p)};
}

inline MemorySusceptibilities memory_susceptibilities(int order, double Delta_p, const SteadyState& s,
                                                      const Model& M)
{
    const auto& p = M.phys;
    const double k = M.der.kappa;
    const double l1 = p.bath.lambda1, mu = p.bath.mu;
    const double z = order * Delta_p;
    const double D = s.Delta_eff;
    const cd I(0.0, 1.0);
    MemorySusceptibilities r;
    r.Lambda = cd(l1, mu - z);
    r.chi = mechanical_chi(p, order, Delta_p);
    if (p.variants.memory == MemoryForm::Printed) {
        r.Lambda_conj = r.Lambda;
        r.sigma1 = k * l1 - I * k * z / 2.0 + r.Lambda * (I * D - I * z);
        r.sigma2 = k * l1 - I * k * z / 2.0 - r.Lambda * (I * D + I * z);
    } else {
        const double kex = M.der.kappa_ex;
        r.Lambda_conj = cd(l1, -mu - z);
        r.sigma1 = (k / 2.0 + I * D - I * z) * r.Lambda + kex * l1 / 2.0;
        r.sigma2 = (k / 2.0 - I * D - I * z) * r.Lambda_conj + kex * l1 / 2.0;
    }
    return r;
}

namespace detail {

inline Mat3 markov_matrix(const Susceptibilities& S, const SteadyState& s, const Model& M, bool opa_coupled)
{
    const auto& p = M.phys;
    const double xi = M.der.xi, hx = constants::hbar * xi;
    const cd I(0.0, 1.0), a = s.a_s, ac = std::conj(s.a_s);
    const cd g = opa_coupled ? 2.0 * p.G * std::polar(1.0, p.theta) : cd(0.0);
    Mat3 A;
    A << S.sigma1, -g, -I * xi * a,
         -std::conj(g), S.sigma2, I * xi * ac,
         -hx * ac, -hx * a, S.chi;
    return A;
}

inline Mat3 memory_matrix(const MemorySusceptibilities& S, const SteadyState& s, const Model& M)
{
    const double xi = M.der.xi, hx = constants::hbar * xi;
    const cd I(0.0, 1.0), a = s.a_s, ac = std::conj(s.a_s);
    Mat3 A;
    A << S.sigma1, 0.0, -I * xi * a * S.Lambda,
         0.0, S.sigma2, I * xi * ac * S.Lambda_conj,
         -hx * ac, -hx * a, S.chi;
    return A;
}

inline FirstOrder unpack_first(const Solve3& r) { return {r.x(0), std::conj(r.x(1)), r.x(2), r.cond}; }
inline SecondOrder unpack_second(const Solve3& r) { return {r.x(0), std::conj(r.x(1)), r.x(2), r.cond}; }

inline void expect(const SteadyState& s, Regime r, const char* who)
{
    if (s.regime != r) throw invalid_regime(std::string(who) + " called with a " + to_string(s.regime) + " steady state");
}

} // namespace detail

// Unknowns are ordered (A+, A-*, X+) in every system below.

inline FirstOrder solve_first_order(const SteadyState& s, double Delta_p, const Model& M)
{
    detail::expect(s, Regime::Plain, "solve_first_order");
    const auto& p = M.phys;
    const auto S = susceptibilities(1, Delta_p, s, M);
    Vec3 b;
    b << 2.0 * p.G * std::polar(1.0, p.theta) * std::conj(s.a_s) +
             std::sqrt(M.der.kappa_ex) * M.probe_amplitude(Delta_p),
        0.0, 0.0;
    return detail::unpack_first(solve3(detail::markov_matrix(S, s, M, false), b));
}

inline SecondOrder solve_second_order(const SteadyState& s, const FirstOrder& f, double Delta_p, const Model& M)
{
    detail::expect(s, Regime::Plain, "solve_second_order");
    const auto& p = M.phys;
    const double xi = M.der.xi;
    const cd I(0.0, 1.0), A1mc = std::conj(f.A1_minus);
    const auto S = susceptibilities(2, Delta_p, s, M);
    Vec3 b;
    b << I * xi * f.A1_plus * f.X1_plus + 2.0 * p.G * std::polar(1.0, p.theta) * A1mc,
        -I * xi * A1mc * f.X1_plus,
        constants::hbar * xi * A1mc * f.A1_plus;
    return detail::unpack_second(solve3(detail::markov_matrix(S, s, M, false), b));
}

inline FirstOrder solve_first_order_2wl(const SteadyState& s, double Delta_p, const Model& M)
{
    detail::expect(s, Regime::DoubleControlOPA, "solve_first_order_2wl");
    const auto S = susceptibilities(1, Delta_p, s, M);
    Vec3 b;
    b << std::sqrt(M.der.kappa_ex) * M.probe_amplitude(Delta_p), 0.0, 0.0;
    return detail::unpack_first(solve3(detail::markov_matrix(S, s, M, true), b));
}

inline SecondOrder solve_second_order_2wl(const SteadyState& s, const FirstOrder& f, double Delta_p,
                                          const Model& M)
{
    detail::expect(s, Regime::DoubleControlOPA, "solve_second_order_2wl");
    const double xi = M.der.xi;
    const cd I(0.0, 1.0), A1mc = std::conj(f.A1_minus);
    const auto S = susceptibilities(2, Delta_p, s, M);
    Vec3 b;
    b << I * xi * f.A1_plus * f.X1_plus,
        -I * xi * A1mc * f.X1_plus,
        constants::hbar * xi * f.A1_plus * A1mc;
    return detail::unpack_second(solve3(detail::markov_matrix(S, s, M, true), b));
}

// The conjugate first-order row couples to X1+, as in the Markovian system.
inline FirstOrder solve_first_order_nm(const SteadyState& s, double Delta_p, const Model& M)
{
    detail::expect(s, Regime::NonMarkovian, "solve_first_order_nm");
    const auto& p = M.phys;
    const auto S = memory_susceptibilities(1, Delta_p, s, M);
    Vec3 b;
    b << S.Lambda * (2.0 * p.G * std::polar(1.0, p.theta) * std::conj(s.a_s) +
                     std::sqrt(M.der.kappa_ex) * M.probe_amplitude(Delta_p)),
        0.0, 0.0;
    return detail::unpack_first(solve3(detail::memory_matrix(S, s, M), b));
}

inline SecondOrder solve_second_order_nm(const SteadyState& s, const FirstOrder& f, double Delta_p,
                                         const Model& M)
{
    detail::expect(s, Regime::NonMarkovian, "solve_second_order_nm");
    const auto& p = M.phys;
    const double xi = M.der.xi;
    const cd I(0.0, 1.0), A1mc = std::conj(f.A1_minus);
    const auto S = memory_susceptibilities(2, Delta_p, s, M);
    Vec3 b;
    b << S.Lambda * (I * xi * f.A1_plus * f.X1_plus + 2.0 * p.G * std::polar(1.0, p.theta) * A1mc),
        -I * xi * S.Lambda_conj * A1mc * f.X1_plus,
        constants::hbar * xi * A1mc * f.A1_plus;
    return detail::unpack_second(solve3(detail::memory_matrix(S, s, M), b));
}

inline SidebandSolution solve_sidebands(const SteadyState& s, double Delta_p, const Model& M)
{
    FirstOrder f;
    SecondOrder g;
    switch (s.regime) {
    case Regime::Plain:
        f = solve_first_order(s, Delta_p, M);
        g = solve_second_order(s, f, Delta_p, M);
        break;
    case Regime::DoubleControlOPA:
        f = solve_first_order_2wl(s, Delta_p, M);
        g = solve_second_order_2wl(s, f, Delta_p, M);
        break;
    case Regime::NonMarkovian:
        f = solve_first_order_nm(s, Delta_p, M);
        g = solve_second_order_nm(s, f, Delta_p, M);
        break;
    }
    SidebandSolution r;
    r.A1_plus = f.A1_plus;
    r.A1_minus = f.A1_minus;
    r.X1_plus = f.X1_plus;
    r.A2_plus = g.A2_plus;
    r.A2_minus = g.A2_minus;
    r.X2_plus = g.X2_plus;
    r.Delta_p = Delta_p;
    r.regime = s.regime;
    r.steady = s;
    r.cond1 = f.cond;
    r.cond2 = g.cond;
    return r;
}

// Published closed forms, kept for cross-checking the linear solves.
namespace printed {

struct Auxiliaries {
    cd D, f1, f2, f3_1, f3_2;
};

inline Auxiliaries auxiliaries(const SteadyState& s, double Delta_p, const Model& M)
{
    const auto S1 = susceptibilities(1, Delta_p, s, M);
    const auto S2 = susceptibilities(2, Delta_p, s, M);
    const cd I(0.0, 1.0);
    Auxiliaries x;
    x.D = I * constants::hbar * M.der.xi * M.der.xi * s.photons();
    x.f1 = I * x.D * Delta_p + S1.sigma2 * S2.sigma2 * S2.chi;
    x.f2 = x.D + S2.sigma2 * S2.chi;
    x.f3_1 = 2.0 * I * x.D * s.Delta_eff + S1.sigma1 * S1.sigma2 * S1.chi;
    x.f3_2 = 2.0 * I * x.D * s.Delta_eff + S2.sigma1 * S2.sigma2 * S2.chi;
    return x;
}

inline FirstOrder first_order(const SteadyState& s, double Delta_p, const Model& M)
{
    const auto& p = M.phys;
    const auto S = susceptibilities(1, Delta_p, s, M);
    const auto x = auxiliaries(s, Delta_p, M);
    const double xi = M.der.xi;
    const cd I(0.0, 1.0), ac = std::conj(s.a_s);
    const cd drive = std::sqrt(M.der.kappa_ex) * M.probe_amplitude(Delta_p) +
                     2.0 * p.G * std::polar(1.0, p.theta) * ac;
    FirstOrder f;
    f.A1_plus = (x.D + S.sigma2 * S.chi) / x.f3_1 * drive;
    f.X1_plus = constants::hbar * xi * ac * S.sigma2 / (x.D + S.sigma2 * S.chi) * f.A1_plus;
    f.A1_minus = std::conj(-I * xi * ac / S.sigma2 * f.X1_plus);
    return f;
}

inline cd second_order_upper(const SteadyState& s, const FirstOrder& f, double Delta_p, const Model& M)
{
    const auto& p = M.phys;
    const auto S = susceptibilities(1, Delta_p, s, M);
    const auto x = auxiliaries(s, Delta_p, M);
    const double xi = M.der.xi;
    const cd I(0.0, 1.0), a = s.a_s, ac = std::conj(s.a_s), X1 = f.X1_plus;
    const cd num = -x.D * xi * xi * a * X1 * X1 + I * xi * x.f1 * f.A1_plus * X1 -
                   2.0 * I * xi * p.G * std::polar(1.0, p.theta) * ac * x.f2 * X1;
    return num / (S.sigma2 * x.f3_2);
}

// Double-control first-order upper sideband, (D + sigma2 chi) sqrt(kex) eps_p / (f4 + f3).
inline cd first_order_upper_2wl(const SteadyState& s, double Delta_p, const Model& M)
{
    const auto& p = M.phys;
    const auto S = susceptibilities(1, Delta_p, s, M);
    const auto x = auxiliaries(s, Delta_p, M);
    const cd I(0.0, 1.0), a = s.a_s, ac = std::conj(s.a_s);
    const double hx2 = constants::hbar * M.der.xi * M.der.xi;
    const cd f4 = 2.0 * I * hx2 * p.G * (ac * ac * std::polar(1.0, p.theta) - a * a * std::polar(1.0, -p.theta)) -
                  4.0 * p.G * p.G * S.chi;
    return (x.D + S.sigma2 * S.chi) / (f4 + x.f3_1) * std::sqrt(M.der.kappa_ex) * M.probe_amplitude(Delta_p);
}

} // namespace printed

} // namespace omit
