#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wetlab {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct InvalidProfileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoInverseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Slope requested at a kink of a piecewise-linear profile; carries the
// one-sided derivatives.
struct KinkError : std::runtime_error {
  double left;
  double right;
  KinkError(double l, double r)
      : std::runtime_error("slope undefined at kink (one-sided values " +
                           std::to_string(l) + ", " + std::to_string(r) + ")"),
        left(l),
        right(r) {}
};

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MeasurementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config validation failure carrying every violation found, not just the
// first.
struct ValidationError : std::runtime_error {
  std::vector<std::string> issues;
  explicit ValidationError(std::vector<std::string> list)
      : std::runtime_error(join(list)), issues(std::move(list)) {}

 private:
  static std::string join(const std::vector<std::string>& list) {
    std::string out = "config validation failed:";
    for (const auto& s : list) out += "\n  " + s;
    return out;
  }
};

}  // namespace wetlab
