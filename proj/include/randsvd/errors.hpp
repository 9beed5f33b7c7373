#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace randsvd {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch between operands; the message names both shapes.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A scalar argument (rank, sketch width, fraction, ...) is out of range.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// An iterative solver exhausted its sweep/iteration budget.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, int iterations)
        : Error(what), iterations_(iterations) {}

    int iterations() const noexcept { return iterations_; }

private:
    int iterations_;
};

/// File I/O failure; carries the offending path and byte offset.
class IoError : public Error {
public:
    IoError(const std::string& what, std::string path, std::uint64_t offset)
        : Error(what), path_(std::move(path)), offset_(offset) {}

    const std::string& path() const noexcept { return path_; }
    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::string path_;
    std::uint64_t offset_;
};

/// Bad command line (unknown flag, missing flag, unparseable value).
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace randsvd
