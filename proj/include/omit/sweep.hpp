#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "config.hpp"
#include "observables.hpp"
#include "parallel.hpp"

namespace omit {

enum class Observable { Eta1, Eta2, Tau1, OutputSpectrum, Steady };

inline Observable parse_observable(const std::string& s)
{
    if (s == "eta1") return Observable::Eta1;
    if (s == "eta2") return Observable::Eta2;
    if (s == "tau1") return Observable::Tau1;
    if (s == "output_spectrum") return Observable::OutputSpectrum;
    if (s == "steady") return Observable::Steady;
    throw config_error("unknown observable '" + s + "'");
}

struct Axis {
    std::string param;  // a PhysParams field or Delta_p
    double min = 0, max = 0;
    int count = 2;
    Quantity::Unit unit = Quantity::Unit::SI;

    double value(int i) const
    {
        if (count == 1) return min;
        return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
};

struct Series {
    std::string label;
    std::vector<Setting> settings;
};

struct SweepSpec {
    std::string name;
    std::string description;
    std::vector<Axis> axes; // first axis is the outer loop
    std::vector<Setting> fixed;
    std::vector<Series> series; // empty means one unlabeled series
    std::set<Observable> observables{Observable::Eta1, Observable::Eta2};
    double Delta_p_wm = 1.0; // probe detuning when it is not an axis
};

inline void validate(const SweepSpec& spec)
{
    if (spec.axes.empty() || spec.axes.size() > 2) throw config_error("a sweep needs one or two axes");
    for (const auto& a : spec.axes) {
        if (a.count < 2) throw config_error("axis '" + a.param + "' needs at least 2 points");
        if (a.param != "Delta_p" && !is_numeric_field(a.param))
            throw config_error("axis '" + a.param + "' is not a numeric parameter");
        if (!std::isfinite(a.min) || !std::isfinite(a.max)) throw config_error("axis '" + a.param + "' bounds must be finite");
    }
    if (spec.axes.size() == 2 && spec.axes[0].param == spec.axes[1].param)
        throw config_error("both axes sweep '" + spec.axes[0].param + "'");
    for (const auto& s : spec.fixed)
        if (!is_numeric_field(s.name) && !is_text_field(s.name)) throw config_error("unknown parameter '" + s.name + "'");
    for (const auto& se : spec.series)
        for (const auto& s : se.settings)
            if (!is_numeric_field(s.name) && !is_text_field(s.name)) throw config_error("unknown parameter '" + s.name + "'");
}

struct SpectrumRecord {
    std::string series;
    std::string regime;
    std::string pump_mode;
    std::string bath;
    double Delta_p_wm = 0;
    double Omega = 0, G_kappa = 0, theta = 0, P_l = 0, P_p = 0;
    std::optional<double> lambda1_wm, mu_wm;
    std::optional<double> eta1, eta2, tau1;
    std::optional<double> transmission, C2_re, C2_im, stokes_abs, up2_abs, low2_abs;
    std::optional<double> a_s_re, a_s_im, x_s, Delta_eff_wm;
    std::optional<int> iterations;
    std::optional<double> residual;
    std::string error;
};

namespace detail {

inline std::string fmt(double v)
{
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

inline SpectrumRecord compute_point(const SweepSpec& spec, const PhysParams& base, const Series* series,
                                    const std::vector<double>& values)
{
    SpectrumRecord r;
    r.series = series ? series->label : "";
    PhysParams p = base;
    double Dp_wm = spec.Delta_p_wm;
    try {
        apply_settings(p, spec.fixed);
        if (series) apply_settings(p, series->settings);
        std::vector<Setting> ax;
        for (std::size_t i = 0; i < spec.axes.size(); ++i) {
            if (spec.axes[i].param == "Delta_p") {
                Quantity q{values[i], spec.axes[i].unit};
                Dp_wm = q.unit == Quantity::Unit::OmegaM ? q.value : resolve(q, p) / p.omega_m;
            } else {
                ax.push_back({spec.axes[i].param, {values[i], spec.axes[i].unit}, {}});
            }
        }
        apply_settings(p, ax);
    } catch (const error& e) {
        r.error = e.kind() + ": " + e.what();
        return r;
    }

    r.pump_mode = to_string(p.pump_mode);
    r.bath = p.bath.markovian ? "markovian" : "non-markovian";
    r.Delta_p_wm = Dp_wm;
    r.Omega = p.Omega;
    r.theta = p.theta;
    r.P_l = p.P_l;
    if (!p.bath.markovian) {
        r.lambda1_wm = p.bath.lambda1 / p.omega_m;
        r.mu_wm = p.bath.mu / p.omega_m;
    }
    try {
        const Model M(p);
        r.G_kappa = p.G / M.der.kappa;
        r.P_p = M.der.P_p;
        r.regime = to_string(regime_of(p));
        const SteadyState s = solve_steady(M);
        if (spec.observables.count(Observable::Steady)) {
            r.a_s_re = s.a_s.real();
            r.a_s_im = s.a_s.imag();
            r.x_s = s.x_s;
            r.Delta_eff_wm = s.Delta_eff / p.omega_m;
            r.iterations = s.iterations;
            r.residual = s.residual;
        }
        const double Dp = Dp_wm * p.omega_m;
        const bool need_sol = spec.observables.count(Observable::Eta1) || spec.observables.count(Observable::Eta2) ||
                              spec.observables.count(Observable::OutputSpectrum);
        if (need_sol) {
            const auto sol = solve_sidebands(s, Dp, M);
            if (spec.observables.count(Observable::OutputSpectrum) && s.regime != Regime::NonMarkovian) {
                const auto o = output_spectrum(sol, s, M);
                const double eps = M.probe_amplitude(Dp);
                if (eps > 0.0) r.transmission = std::norm(o.C2 / eps);
                r.C2_re = o.C2.real();
                r.C2_im = o.C2.imag();
                r.stokes_abs = std::abs(o.stokes);
                r.up2_abs = std::abs(o.up2);
                r.low2_abs = std::abs(o.low2);
            }
            if (spec.observables.count(Observable::Eta1) || spec.observables.count(Observable::Eta2)) {
                // With no probe and no OPA every sideband vanishes identically; report zero
                // efficiency instead of the undefined ratio.
                Efficiencies e;
                if (M.probe_amplitude(Dp) == 0.0 && p.G == 0.0) e.eta2 = 0.0;
                else e = efficiencies(sol, M);
                if (s.regime == Regime::NonMarkovian) e.eta2.reset();
                if (spec.observables.count(Observable::Eta1)) r.eta1 = e.eta1;
                if (spec.observables.count(Observable::Eta2)) r.eta2 = e.eta2;
            }
        }
        if (spec.observables.count(Observable::Tau1)) {
            DelayOptions o;
            o.at = Dp;
            r.tau1 = group_delay(s, M, o).tau1;
        }
    } catch (const error& e) {
        r.error = e.kind() + ": " + e.what();
    }
    return r;
}

} // namespace detail

inline std::size_t grid_size(const SweepSpec& spec)
{
    std::size_t n = spec.series.empty() ? 1 : spec.series.size();
    for (const auto& a : spec.axes) n *= static_cast<std::size_t>(a.count);
    return n;
}

// Evaluate every grid point. Rows are ordered by series, then row-major over the axes,
// independent of the number of workers.
inline std::vector<SpectrumRecord> run_sweep(const SweepSpec& spec, const PhysParams& base, int workers = 0)
{
    validate(spec);
    {
        PhysParams probe = base;
        apply_settings(probe, spec.fixed);
        for (const auto& s : spec.series) {
            PhysParams q = probe;
            apply_settings(q, s.settings);
        }
    }
    const std::size_t total = grid_size(spec);
    const std::size_t inner = spec.axes.size() == 2 ? static_cast<std::size_t>(spec.axes[1].count) : 1;
    const std::size_t per_series = total / (spec.series.empty() ? 1 : spec.series.size());
    std::vector<SpectrumRecord> out(total);

    auto task = [&](std::size_t idx) {
        const std::size_t si = idx / per_series;
        const std::size_t k = idx % per_series;
        std::vector<double> v;
        if (spec.axes.size() == 1) {
            v.push_back(spec.axes[0].value(static_cast<int>(k)));
        } else {
            v.push_back(spec.axes[0].value(static_cast<int>(k / inner)));
            v.push_back(spec.axes[1].value(static_cast<int>(k % inner)));
        }
        out[idx] = detail::compute_point(spec, base, spec.series.empty() ? nullptr : &spec.series[si], v);
    };

    parallel_for(total, workers, task);
    return out;
}

enum class Format { CSV, JSONL };

inline const std::vector<std::string>& record_columns()
{
    static const std::vector<std::string> cols = {
        "series", "regime", "pump_mode", "bath", "Delta_p_wm", "Omega", "G_kappa", "theta", "P_l", "P_p",
        "lambda1_wm", "mu_wm", "eta1", "eta2", "tau1", "transmission", "C2_re", "C2_im", "stokes_abs",
        "up2_abs", "low2_abs", "a_s_re", "a_s_im", "x_s", "Delta_eff_wm", "iterations", "residual", "error"};
    return cols;
}

namespace detail {

// Field values as (text, is_string, is_null) in column order.
struct Cell {
    std::string text;
    bool str = false;
    bool null = false;
};

inline std::vector<Cell> cells(const SpectrumRecord& r)
{
    auto num = [](const std::optional<double>& v) {
        return v && std::isfinite(*v) ? Cell{fmt(*v)} : Cell{"", false, true};
    };
    auto n = [](double v) { return Cell{fmt(v)}; };
    auto s = [](const std::string& v) { return Cell{v, true, false}; };
    const bool failed_early = r.regime.empty() && !r.error.empty();
    auto echo = [&](double v) { return failed_early ? Cell{"", false, true} : n(v); };
    return {s(r.series), s(r.regime), s(r.pump_mode), s(r.bath), echo(r.Delta_p_wm), echo(r.Omega),
            echo(r.G_kappa), echo(r.theta), echo(r.P_l), echo(r.P_p), num(r.lambda1_wm), num(r.mu_wm),
            num(r.eta1), num(r.eta2), num(r.tau1), num(r.transmission), num(r.C2_re), num(r.C2_im),
            num(r.stokes_abs), num(r.up2_abs), num(r.low2_abs), num(r.a_s_re), num(r.a_s_im), num(r.x_s),
            num(r.Delta_eff_wm), r.iterations ? Cell{std::to_string(*r.iterations)} : Cell{"", false, true},
            num(r.residual), s(r.error)};
}

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) {
        if (c == '"') o += '"';
        o += c;
    }
    return o + "\"";
}

inline std::string json_escape(const std::string& s)
{
    std::string o = "\"";
    for (char c : s) {
        switch (c) {
        case '"': o += "\\\""; break;
        case '\\': o += "\\\\"; break;
        case '\n': o += "\\n"; break;
        case '\t': o += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                o += buf;
            } else {
                o += c;
            }
        }
    }
    return o + "\"";
}

} // namespace detail

inline void write_header(std::ostream& os, Format f)
{
    if (f != Format::CSV) return;
    const auto& cols = record_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
}

inline void write_record(std::ostream& os, const SpectrumRecord& r, Format f)
{
    const auto c = detail::cells(r);
    const auto& cols = record_columns();
    if (f == Format::CSV) {
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << (c[i].null ? "" : detail::csv_escape(c[i].text));
        os << '\n';
        return;
    }
    os << '{';
    for (std::size_t i = 0; i < c.size(); ++i) {
        os << (i ? "," : "") << '"' << cols[i] << "\":";
        if (c[i].null) os << "null";
        else if (c[i].str) os << (c[i].text.empty() && cols[i] != "series" && cols[i] != "error" ? "null" : detail::json_escape(c[i].text));
        else os << c[i].text;
    }
    os << "}\n";
}

inline void write_records(std::ostream& os, const std::vector<SpectrumRecord>& rows, Format f)
{
    write_header(os, f);
    for (const auto& r : rows) write_record(os, r, f);
}

} // namespace omit
