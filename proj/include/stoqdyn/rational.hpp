#ifndef STOQDYN_RATIONAL_HPP
#define STOQDYN_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace stoqdyn {

/// Exact scalar used by every classical module. Arithmetic never rounds;
/// the quantum module is the only float consumer (see quantum.hpp).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Tolerance for float comparisons in the quantum module.
inline constexpr double kFloatTol = 1e-9;

enum class Err {
  NotNormalized,
  OutOfRange,
  DimensionMismatch,
  LambdaOutOfRange,
  InvalidEvent,
  InvalidTime,
  LengthMismatch,
  NotMarkovian,
  GridNotDifferenceClosed,
  NotDecomposable,
  GridMismatch,
  DegenerateTrajectory,
  InvalidFamily,
  NoGenerator,
  UnknownSupportVector,
  BadWeights,
  BadConfig,
  GridTooLarge,
  NotUnitary,
  WrongDimension,
  NotDensityMatrix,
  PreconditionFailed,
  SingularIntermediate,
  ParseError,
  SchemaError,
  CapExceeded,
  UnknownSchema,
  InvalidDynamics,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

/// Parses "num/den" or "num". Throws ParseError on malformed input or zero denominator.
Rational parse_rational(const std::string& s);

/// Formats as "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace stoqdyn

#endif
