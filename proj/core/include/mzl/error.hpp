#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace mzl {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain where an operation is defined.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A series could not reach its precision target; carries the bound it did reach.
class PrecisionLossError : public Error {
public:
  PrecisionLossError(const std::string& what, double achieved_bound)
      : Error(what), achieved_bound_(achieved_bound) {}
  double achieved_bound() const noexcept { return achieved_bound_; }

private:
  double achieved_bound_;
};

class PoleProximityError : public Error {
public:
  PoleProximityError(const std::string& what, double distance)
      : Error(what), distance_(distance) {}
  double distance() const noexcept { return distance_; }

private:
  double distance_;
};

class SingularDenominatorError : public Error {
public:
  using Error::Error;
};

/// |f| fell below the noise floor on a contour sample.
class ZeroOnContourError : public Error {
public:
  ZeroOnContourError(const std::string& what, std::complex<double> where,
                     double modulus)
      : Error(what), where_(where), modulus_(modulus) {}
  std::complex<double> where() const noexcept { return where_; }
  double modulus() const noexcept { return modulus_; }

private:
  std::complex<double> where_;
  double modulus_;
};

class NonconvergenceError : public Error {
public:
  using Error::Error;
};

class InvalidSpecError : public Error {
public:
  using Error::Error;
};

class PerturbationError : public Error {
public:
  using Error::Error;
};

/// Sign-change counting met a plateau of near-zero values it could not resolve.
class AmbiguityError : public Error {
public:
  AmbiguityError(const std::string& what, double lo, double hi)
      : Error(what), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

private:
  double lo_, hi_;
};

/// A sampled precondition (e.g. dominance |f| > C|g|) failed.
class PreconditionError : public Error {
public:
  PreconditionError(const std::string& what, std::complex<double> worst)
      : Error(what), worst_(worst) {}
  std::complex<double> worst() const noexcept { return worst_; }

private:
  std::complex<double> worst_;
};

}  // namespace mzl
