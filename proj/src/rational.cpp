#include "stoqdyn/rational.hpp"

#include <sstream>

namespace stoqdyn {

const char* err_name(Err e) {
  switch (e) {
    case Err::NotNormalized: return "NotNormalized";
    case Err::OutOfRange: return "OutOfRange";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::LambdaOutOfRange: return "LambdaOutOfRange";
    case Err::InvalidEvent: return "InvalidEvent";
    case Err::InvalidTime: return "InvalidTime";
    case Err::LengthMismatch: return "LengthMismatch";
    case Err::NotMarkovian: return "NotMarkovian";
    case Err::GridNotDifferenceClosed: return "GridNotDifferenceClosed";
    case Err::NotDecomposable: return "NotDecomposable";
    case Err::GridMismatch: return "GridMismatch";
    case Err::DegenerateTrajectory: return "DegenerateTrajectory";
    case Err::InvalidFamily: return "InvalidFamily";
    case Err::NoGenerator: return "NoGenerator";
    case Err::UnknownSupportVector: return "UnknownSupportVector";
    case Err::BadWeights: return "BadWeights";
    case Err::BadConfig: return "BadConfig";
    case Err::GridTooLarge: return "GridTooLarge";
    case Err::NotUnitary: return "NotUnitary";
    case Err::WrongDimension: return "WrongDimension";
    case Err::NotDensityMatrix: return "NotDensityMatrix";
    case Err::PreconditionFailed: return "PreconditionFailed";
    case Err::SingularIntermediate: return "SingularIntermediate";
    case Err::ParseError: return "ParseError";
    case Err::SchemaError: return "SchemaError";
    case Err::CapExceeded: return "CapExceeded";
    case Err::UnknownSchema: return "UnknownSchema";
    case Err::InvalidDynamics: return "InvalidDynamics";
  }
  return "Unknown";
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) fail(Err::ParseError, "empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(s));
    }
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) fail(Err::ParseError, "zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Err::ParseError, "malformed rational '" + s + "'");
  }
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

}  // namespace stoqdyn
