#include "exch/json_io.hpp"

#include <cmath>
#include <fstream>

#include "exch/error.hpp"

namespace exch {

namespace {

std::vector<double> reals(const Json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ValidationError(std::string(what) + ": non-numeric entry");
    out.push_back(v.get<double>());
  }
  return out;
}

std::size_t count(const Json& j, const char* key) {
  if (!j.contains(key) || !is_nonnegative_integer(j.at(key)))
    throw ValidationError(std::string("missing or invalid field '") + key + "'");
  return j.at(key).get<std::size_t>();
}

// Non-finite doubles have no JSON spelling; they are written as null.
Json real(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json tensor_to_json(const DenseTensor& t) { return {{"dims", t.dims()}, {"data", t.data()}}; }

DenseTensor tensor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("data"))
    throw ValidationError("tensor JSON needs 'dims' and 'data'");
  const auto& jd = j.at("dims");
  if (!jd.is_array()) throw ValidationError("tensor 'dims' must be an array");
  std::vector<std::size_t> dims;
  for (const auto& d : jd) {
    if (!is_nonnegative_integer(d) || d.get<std::size_t>() == 0)
      throw ValidationError("tensor dims must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  auto data = reals(j.at("data"), "tensor data");
  if (data.size() != checked_volume(dims))
    throw ValidationError("tensor data length " + std::to_string(data.size()) + " does not match dims");
  return DenseTensor(std::move(dims), std::move(data));
}

Json matrix_to_json(const Matrix& m) { return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}}; }

Matrix matrix_from_json(const Json& j) {
  const std::size_t r = count(j, "rows");
  const std::size_t c = count(j, "cols");
  auto data = reals(j.at("data"), "matrix data");
  if (data.size() != r * c) throw ValidationError("matrix data length does not match rows*cols");
  return Matrix(r, c, std::move(data));
}

namespace {

std::vector<Matrix> items_from_json(const Json& j, std::size_t expected) {
  const std::size_t p = count(j, "rows");
  const std::size_t q = count(j, "cols");
  if (!j.contains("items") || !j.at("items").is_array()) throw ValidationError("missing 'items' array");
  const auto& items = j.at("items");
  if (items.size() != expected)
    throw ValidationError("expected " + std::to_string(expected) + " items, got " + std::to_string(items.size()));
  std::vector<Matrix> out;
  out.reserve(expected);
  for (const auto& it : items) {
    auto data = reals(it, "item");
    if (data.size() != p * q) throw ValidationError("item length does not match rows*cols");
    out.emplace_back(p, q, std::move(data));
  }
  return out;
}

Json items_to_json(std::size_t n, std::size_t rows, std::size_t cols, const std::vector<Matrix>& items) {
  Json arr = Json::array();
  for (const auto& m : items) arr.push_back(m.data());
  return {{"n", n}, {"rows", rows}, {"cols", cols}, {"items", arr}};
}

}  // namespace

Json seq_to_json(const MatrixSeq& s) { return items_to_json(s.items.size(), s.rows, s.cols, s.items); }

MatrixSeq seq_from_json(const Json& j) {
  const std::size_t n = count(j, "n");
  if (n == 0) throw ValidationError("sequence needs n >= 1");
  return MatrixSeq(items_from_json(j, n));
}

Json grid_to_json(const MatrixGrid& g) { return items_to_json(g.n, g.rows, g.cols, g.items); }

MatrixGrid grid_from_json(const Json& j) {
  MatrixGrid g;
  g.n = count(j, "n");
  if (g.n == 0) throw ValidationError("array needs n >= 1");
  g.rows = count(j, "rows");
  g.cols = count(j, "cols");
  g.items = items_from_json(j, g.n * g.n);
  g.validate();
  return g;
}

Json report_to_json(const BoundReport& r) {
  Json j;
  j["kind"] = r.kind;
  j["delta"] = r.delta;
  j["dim_factor"] = r.dim_factor;
  j["a2"] = real(r.a2);
  j["a"] = real(r.a);
  j["b"] = real(r.b);
  j["variance_term"] = real(r.variance_term);
  j["linear_term"] = real(r.linear_term);
  j["threshold"] = real(r.threshold);
  j["lambda_window"] = real(r.lambda_window);
  j["lambda_opt"] = r.lambda_opt ? real(*r.lambda_opt) : Json(nullptr);
  j["lambda_opt_in_window"] = r.lambda_opt_in_window;
  j["epsilons"] = r.epsilons;
  j["contributions"] = r.contributions;
  j["contracts"] = r.contracts;
  Json extras = Json::object();
  for (const auto& [k, v] : r.extras) extras[k] = real(v);
  j["extras"] = extras;
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw ValidationError("write failed: " + path.string());
}

}  // namespace exch
