#pragma once

#include <iosfwd>
#include <string>

#include "randsvd/matrix.hpp"

namespace randsvd {

/// DMAT binary layout: 6 magic bytes "DMAT1\n", rows and cols as 64-bit
/// little-endian unsigned integers, then rows*cols IEEE-754 binary64
/// little-endian values in row-major order. No padding, no trailing bytes.

DenseMatrix read_dmat(const std::string& path);
void write_dmat(const std::string& path, const DenseMatrix& m);

/// Stream forms; `name` labels the source in error messages.
DenseMatrix read_dmat(std::istream& in, const std::string& name);
void write_dmat(std::ostream& out, const DenseMatrix& m, const std::string& name);

}  // namespace randsvd
