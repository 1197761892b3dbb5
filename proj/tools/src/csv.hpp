#pragma once

#include <string>
#include <vector>

#include "ctrex/errors.hpp"
#include "ctrex/types.hpp"

namespace ctrex::cli {

// Errors raised while reading a complex table; messages always name the
// offending file plus column or row.
class CsvError : public Error {
 public:
  using Error::Error;
};
class UnpairedColumn : public CsvError {
 public:
  using CsvError::CsvError;
};
class NonNumericCell : public CsvError {
 public:
  using CsvError::CsvError;
};
class RaggedRows : public CsvError {
 public:
  using CsvError::CsvError;
};

// A complex matrix serialized as paired real columns: each complex column
// <name> is stored as adjacent "<name>.re","<name>.im" columns, making the
// file parseable by any tabular tool and bit-exact on round trips.
struct ComplexTable {
  std::vector<std::string> names;  // p base names
  CMatrix values;                  // n x p
};

ComplexTable read_complex_table(const std::string& path);

// Values only; header names are validated but discarded.
CMatrix parse_complex_csv(const std::string& path);

void write_complex_table(const std::string& path, const ComplexTable& table);

// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

}  // namespace ctrex::cli
