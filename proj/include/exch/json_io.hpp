#pragma once
// JSON formats for tensors, matrix sequences, matrix arrays and bound reports.

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "exch/bound_report.hpp"
#include "exch/matrix.hpp"
#include "exch/matrix_bounds.hpp"
#include "exch/tensor.hpp"

namespace exch {

using Json = nlohmann::json;

/// True for integers >= 0 whether stored signed or unsigned.
inline bool is_nonnegative_integer(const Json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

/// {"dims": [N_0, ...], "data": [row-major]}.
Json tensor_to_json(const DenseTensor& t);
DenseTensor tensor_from_json(const Json& j);

/// {"rows": p, "cols": q, "data": [row-major]}.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"n": N, "rows": p, "cols": q, "items": [[row-major], ...]}.
Json seq_to_json(const MatrixSeq& s);
MatrixSeq seq_from_json(const Json& j);

/// Same layout as a sequence with N² items in row-major (k, l) order.
Json grid_to_json(const MatrixGrid& g);
MatrixGrid grid_from_json(const Json& j);

Json report_to_json(const BoundReport& r);

/// Throws ValidationError on I/O or parse failure.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace exch
