#pragma once

#include <stdexcept>
#include <string>

namespace glcviz {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or cell.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Invalid plot/classifier/experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A value outside its admissible range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Mismatched dimensions between two objects that must agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

}  // namespace glcviz
