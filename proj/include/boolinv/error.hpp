#ifndef BOOLINV_ERROR_HPP_
#define BOOLINV_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace boolinv {

  /// Base class for every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  /// A closure or enumeration grew past the configured element cap.
  class SizeLimitError : public Error {
   public:
    SizeLimitError(std::string const& what, std::size_t cap)
        : Error(what + " (cap " + std::to_string(cap) + ")"), _cap(cap) {}

    std::size_t cap() const noexcept {
      return _cap;
    }

   private:
    std::size_t _cap;
  };

  /// The input does not have the algebraic structure an operation needs
  /// (not Boolean, not an inverse monoid, ...).
  class StructureError : public Error {
   public:
    using Error::Error;
  };

  /// A join was requested for a set that is not pairwise compatible.
  class CompatibilityError : public Error {
   public:
    using Error::Error;
  };

  /// Arguments outside the domain of an operation.
  class ArgumentError : public Error {
   public:
    using Error::Error;
  };

  /// A mean, measure, diagram, ... violates its defining constraints.
  class ValidationError : public Error {
   public:
    using Error::Error;
  };

  /// The structure is valid but outside the regime an operation supports.
  /// Carries the element that witnesses the problem (e.g. a nontrivial
  /// isotropy arrow) when there is one.
  class UnsupportedStructureError : public Error {
   public:
    UnsupportedStructureError(std::string const&         what,
                              std::optional<std::size_t> witness)
        : Error(what), _witness(witness) {}

    std::optional<std::size_t> witness() const noexcept {
      return _witness;
    }

   private:
    std::optional<std::size_t> _witness;
  };

  /// Malformed JSON input.
  class ParseError : public Error {
   public:
    using Error::Error;
  };

  /// A cross-check between two independent computations disagreed.
  class InternalError : public Error {
   public:
    using Error::Error;
  };

}  // namespace boolinv

#endif  // BOOLINV_ERROR_HPP_
