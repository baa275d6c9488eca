#pragma once

#include <stdexcept>
#include <string>
#include <functional>

namespace qam {

// Bad user input: config files, parameter ranges, dimension mismatches.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: eigensolver breakdown, singular dual systems,
// positivity clipping beyond budget, integrator stiffness.
class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

class dimension_error : public config_error {
public:
    explicit dimension_error(const std::string& what) : config_error(what) {}
};

// Parameter regime the model does not cover (n >= 2m, m != n for the
// shifted form, degenerate lobes, ...).
class regime_error : public config_error {
public:
    explicit regime_error(const std::string& what) : config_error(what) {}
};

namespace warnings {

using Handler = std::function<void(const std::string&)>;

// Default handler prints to stderr. Tests swap it to capture messages.
void set_handler(Handler h);
void emit(const std::string& message);

} // namespace warnings
} // namespace qam
