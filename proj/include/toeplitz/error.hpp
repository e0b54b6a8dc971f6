#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace toeplitz {

  //! Base class of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! The periods of a tower are not a strictly increasing divisibility chain.
  class DivisibilityError : public Error {
   public:
    using Error::Error;
  };

  //! Two levels of a tower disagree.  `shallow_level` and `deep_level` are
  //! level indices; `index` is the absolute position (modulo the deeper
  //! period) where the disagreement was first found.
  class ConsistencyError : public Error {
   public:
    ConsistencyError(std::size_t shallow, std::size_t deep, std::int64_t idx,
                     std::string const& what)
        : Error(what), shallow_level(shallow), deep_level(deep), index(idx) {}

    std::size_t  shallow_level;
    std::size_t  deep_level;
    std::int64_t index;
  };

  class AlphabetError : public Error {
   public:
    using Error::Error;
  };

  class ScaleError : public Error {
   public:
    using Error::Error;
  };

  class NonDivisorError : public Error {
   public:
    using Error::Error;
  };

  //! Raised when block extraction is requested at a period with no certified
  //! hole.
  class FullyPeriodicError : public Error {
   public:
    using Error::Error;
  };

  class EmptyScaleError : public Error {
   public:
    using Error::Error;
  };

  class AlphabetMismatchError : public Error {
   public:
    using Error::Error;
  };

  class PeriodMismatchError : public Error {
   public:
    using Error::Error;
  };

  class IncompatiblePeriodsError : public Error {
   public:
    using Error::Error;
  };

  class MissingScaleError : public Error {
   public:
    using Error::Error;
  };

  class OverflowError : public Error {
   public:
    using Error::Error;
  };

  //! Text-format error with a 1-based line and column.
  class ParseError : public Error {
   public:
    ParseError(std::size_t ln, std::size_t col, std::string const& msg)
        : Error("line " + std::to_string(ln) + ", column "
                + std::to_string(col) + ": " + msg),
          line(ln),
          column(col),
          message(msg) {}

    std::size_t line;
    std::size_t column;
    std::string message;
  };

}  // namespace toeplitz
