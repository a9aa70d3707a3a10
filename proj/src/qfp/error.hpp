#ifndef QFP_ERROR_HPP
#define QFP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfp {

/// Bad caller input: wrong arity, mismatched rings, violated preconditions.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input text did not conform to the polynomial grammar.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A value exceeds a supported bound (prime size, exponent width, variable count).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// An internal invariant failed. Never raised on valid input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qfp

#endif  // QFP_ERROR_HPP
