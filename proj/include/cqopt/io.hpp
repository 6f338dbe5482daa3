#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cqopt/forms.hpp"
#include "cqopt/linalg.hpp"

namespace cqopt {

// Tensor file (UTF-8, LF):
//   CQT1
//   order <d>
//   dims <n1> ... <nd>
//   <i1> ... <id> <re> <im_i> <im_j> <im_k>     (1-based; repeated)
// Unlisted entries are zero; a repeated index is an error.
//
// Polynomial file:
//   CQP1
//   degree <d>
//   dim <n>
//   <i1> ... <id> <re> <im_i> <im_j> <im_k>     (i1 <= ... <= id)
// An unsorted tuple is an error; repeated tuples add up.
//
// Blank lines are ignored after the header. Malformed input throws
// ParseError carrying the 1-based line number.

CQTensor parseTensor(std::istream& in);
CQTensor readTensorFile(const std::filesystem::path& path);
/// Canonical form: nonzero entries in row-major order, shortest round-trip reals.
std::string serializeTensor(const CQTensor& t);

PolyProblem parsePoly(std::istream& in);
PolyProblem readPolyFile(const std::filesystem::path& path);
/// Canonical form: nonzero coefficients in lexicographic tuple order.
std::string serializePoly(const PolyProblem& p);

}  // namespace cqopt
