#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace omit {

// Base class for every failure raised by the library. kind() is a stable
// identifier used in CSV error columns and JSON reports.
class error : public std::runtime_error {
public:
    error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class invalid_params : public error {
public:
    invalid_params(std::string field, const std::string& why)
        : error("InvalidParams", field + ": " + why), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class no_convergence : public error {
public:
    no_convergence(double residual, int iterations)
        : error("NoConvergence", "fixed point did not converge after " + std::to_string(iterations) +
                                     " iterations (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class multiple_roots : public error {
public:
    explicit multiple_roots(std::vector<double> roots)
        : error("MultipleRoots", std::to_string(roots.size()) + " steady-state detunings (bistable)"),
          roots_(std::move(roots)) {}
    const std::vector<double>& roots() const noexcept { return roots_; }

private:
    std::vector<double> roots_;
};

class above_threshold : public error {
public:
    explicit above_threshold(const std::string& what) : error("AboveThreshold", what) {}
};

class singular_system : public error {
public:
    explicit singular_system(double cond)
        : error("SingularSystem", "condition estimate " + std::to_string(cond)), cond_(cond) {}
    double condition() const noexcept { return cond_; }

private:
    double cond_;
};

class undefined_efficiency : public error {
public:
    undefined_efficiency() : error("UndefinedEfficiency", "probe amplitude is zero") {}
};

class phase_wrap : public error {
public:
    explicit phase_wrap(double jump)
        : error("PhaseWrap", "phase jump " + std::to_string(jump) + " rad between stencil points") {}
};

class invalid_regime : public error {
public:
    explicit invalid_regime(const std::string& what) : error("InvalidRegime", what) {}
};

class blow_up : public error {
public:
    explicit blow_up(double t) : error("BlowUp", "state bound exceeded at t = " + std::to_string(t)) {}
};

class step_underflow : public error {
public:
    explicit step_underflow(double t)
        : error("StepUnderflow", "step size underflow at t = " + std::to_string(t)) {}
};

class non_periodic : public error {
public:
    explicit non_periodic(double drift)
        : error("NonPeriodic", "window-to-window drift " + std::to_string(drift)), drift_(drift) {}
    double drift() const noexcept { return drift_; }

private:
    double drift_;
};

class unknown_preset : public error {
public:
    explicit unknown_preset(const std::string& name) : error("UnknownPreset", "unknown preset '" + name + "'") {}
};

class config_error : public error {
public:
    explicit config_error(const std::string& what) : error("ConfigError", what) {}
};

} // namespace omit
