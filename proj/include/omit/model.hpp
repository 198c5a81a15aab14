#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

#include "errors.hpp"

namespace omit {

using cd = std::complex<double>;

namespace constants {
inline constexpr double c = 2.99792458e8;       // m/s
inline constexpr double hbar = 1.054571817e-34; // J s
inline constexpr double pi = std::numbers::pi;
} // namespace constants

// Which OPA pump the crystal sees: omega_g = omega_l + omega_p, or omega_g = 2 omega_l.
enum class PumpMode { SumFreq, DoubleControl };

// Mechanical susceptibility argument. Response uses z^2 at z = n*Delta_p; Printed keeps
// the literal -Delta_p^2 for both orders.
enum class ChiArgument { Response, Printed };

// Intracavity amplitude in the 2 omega_l pump. Printed drops the drive factor.
enum class OpaSteady { Corrected, Printed };

// Non-Markovian bath closure. Printed follows the published susceptibilities and
// steady state literally; Consistent keeps lambda1 - i mu on the conjugate row and the
// zero-frequency memory integral in the steady state.
enum class MemoryForm { Printed, Consistent };

struct Bath {
    bool markovian = true;
    double lambda1 = 0.0; // spectral width (rad/s)
    double mu = 0.0;      // reservoir decay (rad/s)

    static Bath markov() { return {}; }
    static Bath nonmarkov(double lambda1, double mu) { return {false, lambda1, mu}; }
};

struct Variants {
    ChiArgument chi = ChiArgument::Response;
    OpaSteady opa_steady = OpaSteady::Corrected;
    MemoryForm memory = MemoryForm::Printed;
};

// Raw parameters. Frequencies are plain s^-1 (no hidden 2 pi) except omega_0,
// which is derived as 2 pi c / lambda. Defaults reproduce the reference device:
// silica toroid, 1550 nm, Q = 4.5e7, 1 mW control and a 5% probe.
struct PhysParams {
    double n = 1.44;             // refractive index
    double R = 0.25e-3;          // radius (m)
    double m = 25e-12;           // effective mass (kg)
    double lambda_vac = 1550e-9; // vacuum wavelength (m)
    double dn_dlambda = 0.0;     // dispersion (1/m)

    double omega_m = 1e8;  // mechanical frequency (rad/s)
    double Gamma_m = 1e5;  // mechanical damping (rad/s)
    double Q = 4.5e7;      // optical quality factor
    std::optional<double> kappa_a;  // intrinsic loss; omega_0/Q when unset
    std::optional<double> kappa_ex; // external coupling; omega_0/Q when unset

    double P_l = 1e-3;                        // control power (W)
    double P_p = 5e-5;                        // probe power (W), ignored while probe_ratio is set
    std::optional<double> probe_ratio = 0.05; // P_p = probe_ratio * P_l
    std::optional<double> Delta_0;            // control detuning; omega_m when unset

    double Omega = 0.0; // spin rate (rad/s), > 0 light from the left, < 0 from the right
    double G = 0.0;     // OPA gain (rad/s)
    double theta = 0.0; // OPA phase (rad)

    PumpMode pump_mode = PumpMode::SumFreq;
    Bath bath;

    // Include the centrifugal stretch R (Omega/omega_m)^2 in the mean displacement.
    // Off in the reference profile: with it the quoted spectra are not reproduced.
    bool centrifugal = false;

    Variants variants;
};

inline PhysParams paper_default() { return PhysParams{}; }

struct DerivedParams {
    double omega_0 = 0;  // cavity resonance (rad/s)
    double omega_l = 0;  // control frequency (rad/s)
    double Delta_0 = 0;  // control detuning (rad/s)
    double kappa_a = 0;  // (rad/s)
    double kappa_ex = 0; // (rad/s)
    double kappa = 0;    // (kappa_a + kappa_ex)/2
    double xi = 0;       // omega_0/R (rad/s/m)
    double P_p = 0;      // resolved probe power (W)
    double eps_l = 0;    // sqrt(P_l / hbar omega_l)
    double eps_p = 0;    // probe amplitude at Delta_p = omega_m
    double x_zpf = 0;    // sqrt(hbar / 2 m omega_m) (m)
    double Delta_s = 0;  // Sagnac-Fizeau shift (rad/s)
    double p_phi = 0;    // m R^2 Omega
    double x_rot = 0;    // rotation displacement, zero when centrifugal is off (m)
};

inline double sagnac_shift(double n, double R, double Omega, double omega_0, double lambda_vac,
                           double dn_dlambda)
{
    return n * R * Omega * omega_0 / constants::c *
           (1.0 - 1.0 / (n * n) - (lambda_vac / n) * dn_dlambda);
}

namespace detail {
inline void require(bool ok, const char* field, const char* why)
{
    if (!ok) throw invalid_params(field, why);
}
inline bool finite(double v) { return std::isfinite(v); }
} // namespace detail

inline void check(const PhysParams& p)
{
    using detail::finite;
    using detail::require;
    require(finite(p.n) && p.n > 1.0, "n", "must be > 1");
    require(finite(p.R) && p.R > 0.0, "R", "must be > 0");
    require(finite(p.m) && p.m > 0.0, "m", "must be > 0");
    require(finite(p.lambda_vac) && p.lambda_vac > 0.0, "lambda_vac", "must be > 0");
    require(finite(p.dn_dlambda), "dn_dlambda", "must be finite");
    require(finite(p.omega_m) && p.omega_m > 0.0, "omega_m", "must be > 0");
    require(finite(p.Gamma_m) && p.Gamma_m >= 0.0, "Gamma_m", "must be >= 0");
    require(finite(p.Q) && p.Q > 0.0, "Q", "must be > 0");
    if (p.kappa_a) require(finite(*p.kappa_a) && *p.kappa_a > 0.0, "kappa_a", "must be > 0");
    if (p.kappa_ex) require(finite(*p.kappa_ex) && *p.kappa_ex > 0.0, "kappa_ex", "must be > 0");
    require(finite(p.P_l) && p.P_l >= 0.0, "P_l", "must be >= 0");
    require(finite(p.P_p) && p.P_p >= 0.0, "P_p", "must be >= 0");
    if (p.probe_ratio) require(finite(*p.probe_ratio) && *p.probe_ratio >= 0.0, "probe_ratio", "must be >= 0");
    if (p.Delta_0) require(finite(*p.Delta_0), "Delta_0", "must be finite");
    require(finite(p.Omega), "Omega", "must be finite");
    require(finite(p.G) && p.G >= 0.0, "G", "must be >= 0");
    require(finite(p.theta), "theta", "must be finite");
    if (!p.bath.markovian) {
        require(finite(p.bath.lambda1) && p.bath.lambda1 > 0.0, "lambda1", "must be > 0");
        require(finite(p.bath.mu) && p.bath.mu >= 0.0, "mu", "must be >= 0");
    }
}

inline DerivedParams derive(const PhysParams& p)
{
    using constants::hbar;
    check(p);
    DerivedParams d;
    d.omega_0 = 2.0 * constants::pi * constants::c / p.lambda_vac;
    d.Delta_0 = p.Delta_0.value_or(p.omega_m);
    d.omega_l = d.omega_0 - d.Delta_0;
    if (d.omega_l <= 0.0) throw invalid_params("Delta_0", "control frequency must be positive");
    d.kappa_a = p.kappa_a.value_or(d.omega_0 / p.Q);
    d.kappa_ex = p.kappa_ex.value_or(d.omega_0 / p.Q);
    d.kappa = (d.kappa_a + d.kappa_ex) / 2.0;
    d.xi = d.omega_0 / p.R;
    d.P_p = p.probe_ratio ? *p.probe_ratio * p.P_l : p.P_p;
    d.eps_l = std::sqrt(p.P_l / (hbar * d.omega_l));
    d.eps_p = std::sqrt(d.P_p / (hbar * (d.omega_l + p.omega_m)));
    d.x_zpf = std::sqrt(hbar / (2.0 * p.m * p.omega_m));
    d.Delta_s = sagnac_shift(p.n, p.R, p.Omega, d.omega_0, p.lambda_vac, p.dn_dlambda);
    d.p_phi = p.m * p.R * p.R * p.Omega;
    d.x_rot = p.centrifugal ? p.R * (p.Omega / p.omega_m) * (p.Omega / p.omega_m) : 0.0;
    return d;
}

// Parameters and their derived quantities, computed once and shared by the solvers.
struct Model {
    PhysParams phys;
    DerivedParams der;

    Model() : Model(PhysParams{}) {}
    explicit Model(const PhysParams& p) : phys(p), der(derive(p)) {}

    // Probe amplitude with omega_p = omega_l + Delta_p.
    double probe_amplitude(double Delta_p) const
    {
        return std::sqrt(der.P_p / (constants::hbar * (der.omega_l + Delta_p)));
    }
    // Detuning before radiation pressure: Delta_0 + Delta_s - xi x_rot.
    double bare_detuning() const { return der.Delta_0 + der.Delta_s - der.xi * der.x_rot; }
};

inline std::string to_string(PumpMode m) { return m == PumpMode::SumFreq ? "sum" : "double"; }

} // namespace omit
