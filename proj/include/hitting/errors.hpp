#pragma once

#include <stdexcept>
#include <string>

namespace hitting {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or invalid input: bad files, shapes, matrices, indices.
/// The command-line front end maps these to exit status 1.
class InputError : public Error {
  public:
    using Error::Error;
};

/// A mathematical precondition does not hold for otherwise valid input.
/// The command-line front end maps these to exit status 2.
class MathError : public Error {
  public:
    using Error::Error;
};

#define HITTING_DECLARE_ERROR(Name, Base)                                      \
    class Name : public Base {                                                 \
      public:                                                                  \
        explicit Name(const std::string &what) : Base(#Name ": " + what) {}    \
    }

HITTING_DECLARE_ERROR(SyntaxError, InputError);
HITTING_DECLARE_ERROR(ShapeError, InputError);
HITTING_DECLARE_ERROR(RowSumError, InputError);
HITTING_DECLARE_ERROR(NegativeEntryError, InputError);
HITTING_DECLARE_ERROR(AbsorbingRowError, InputError);
HITTING_DECLARE_ERROR(IndexError, InputError);

HITTING_DECLARE_ERROR(ZeroDenominator, MathError);
HITTING_DECLARE_ERROR(PoleAtZero, MathError);
HITTING_DECLARE_ERROR(PoleAtPoint, MathError);
HITTING_DECLARE_ERROR(DefectiveDistribution, MathError);
HITTING_DECLARE_ERROR(KindMismatch, MathError);
HITTING_DECLARE_ERROR(ImproperTransform, MathError);
HITTING_DECLARE_ERROR(RepeatedPole, MathError);
HITTING_DECLARE_ERROR(ComplexPole, MathError);
HITTING_DECLARE_ERROR(NotSkipFree, MathError);
HITTING_DECLARE_ERROR(AllRatesZero, MathError);

#undef HITTING_DECLARE_ERROR

} // namespace hitting
