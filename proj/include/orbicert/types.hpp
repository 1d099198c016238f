#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace orbicert {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(Rational const& q) {
    return boost::multiprecision::numerator(q);
}

inline Integer denominator(Rational const& q) {
    return boost::multiprecision::denominator(q);
}

// Smallest integer >= q.
inline Integer ceil(Rational const& q) {
    Integer num = numerator(q);
    Integer den = denominator(q);
    Integer quot = num / den;  // truncates toward zero
    if (quot * den < num) {
        ++quot;
    }
    return quot;
}

inline std::string to_string(Rational const& q) {
    if (denominator(q) == 1) {
        return numerator(q).str();
    }
    return numerator(q).str() + "/" + denominator(q).str();
}

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
  public:
    ParseError(std::string const& msg, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " +
                std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace orbicert
