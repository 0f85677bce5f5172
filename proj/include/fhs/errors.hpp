#ifndef FHS_ERRORS_HPP
#define FHS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fhs {

// Base class for all library errors.
class error : public std::runtime_error {
  public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Bad arguments, dimension mismatches, invalid schemes/configs.
class validation_error : public error {
  public:
    explicit validation_error(const std::string& what) : error(what) {}
};

// An exact computation was refused because it would exceed the configured
// enumeration budget. Never downgraded silently to sampling.
class budget_error : public error {
  public:
    budget_error(const std::string& what, unsigned long long required, unsigned long long budget)
        : error(what), required_evaluations(required), configured_budget(budget) {}
    unsigned long long required_evaluations;
    unsigned long long configured_budget;
};

// A certificate-based method was requested but its premise does not hold
// for the given inputs.
class not_applicable_error : public error {
  public:
    explicit not_applicable_error(const std::string& what) : error(what) {}
};

class io_error : public error {
  public:
    explicit io_error(const std::string& what) : error(what) {}
};

} // namespace fhs

#endif
