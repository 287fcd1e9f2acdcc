#include "lps/io.hpp"

#include <cmath>
#include <initializer_list>
#include <string>

#include "lps/error.hpp"

namespace lps::io {

namespace {

void require_object(const Json& j, std::string_view what,
                    std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) throw FormatError(std::string(what) + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto k : keys) known = known || key == k;
    if (!known) throw FormatError(std::string(what) + ": unknown key '" + key + "'");
  }
  for (auto k : keys) {
    if (!j.contains(std::string(k))) {
      throw FormatError(std::string(what) + ": missing key '" + std::string(k) + "'");
    }
  }
}

double finite_number(const Json& v, std::string_view what) {
  if (!v.is_number()) throw FormatError(std::string(what) + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FormatError(std::string(what) + ": non-finite number");
  return x;
}

int positive_int(const Json& v, std::string_view what) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw FormatError(std::string(what) + ": expected a positive integer");
  }
  return static_cast<int>(v.get<long long>());
}

RealVector real_array(const Json& v, std::size_t expected, std::string_view what) {
  if (!v.is_array() || v.size() != expected) {
    throw FormatError(std::string(what) + ": expected an array of " + std::to_string(expected) +
                      " numbers");
  }
  RealVector out(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) {
    out(static_cast<Eigen::Index>(i)) = finite_number(v[i], what);
  }
  return out;
}

Json real_json(const RealVector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

std::vector<Matrix> matrix_list(const Json& v, int dim, std::string_view what) {
  if (!v.is_array() || v.empty()) throw FormatError(std::string(what) + ": expected a nonempty array");
  std::vector<Matrix> out;
  for (const auto& item : v) {
    Matrix m = matrix_from_json(item);
    if (m.rows() != dim) throw FormatError(std::string(what) + ": matrix dim does not match");
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

Json to_json(const Matrix& m) {
  require_square(m, "to_json");
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  }
  return Json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json& j) {
  require_object(j, "matrix", {"dim", "re", "im"});
  const int n = positive_int(j["dim"], "matrix.dim");
  const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  const RealVector re = real_array(j["re"], count, "matrix.re");
  const RealVector im = real_array(j["im"], count, "matrix.im");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) m(i, k) = Complex(re(i * n + k), im(i * n + k));
  }
  return m;
}

Json to_json(const toda::TodaState& s) {
  return Json{{"N", s.size()},
              {"x", real_json(s.x)},
              {"p", real_json(s.p)},
              {"alpha", real_json(s.alpha)},
              {"lambda", real_json(s.lambda)}};
}

toda::TodaState toda_state_from_json(const Json& j) {
  require_object(j, "toda state", {"N", "x", "p", "alpha", "lambda"});
  const int n = positive_int(j["N"], "toda.N");
  if (n < 2) throw FormatError("toda.N: need at least two particles");
  const auto m = static_cast<std::size_t>(n - 1);
  try {
    return toda::make_state(real_array(j["x"], m, "toda.x"),
                            real_array(j["p"], static_cast<std::size_t>(n), "toda.p"),
                            real_array(j["alpha"], m, "toda.alpha"),
                            real_array(j["lambda"], m, "toda.lambda"));
  } catch (const ContractError& e) {
    throw FormatError(e.what());
  }
}

Json to_json(const ReductionOp& r) {
  Json j{{"kind", std::string(to_string(r.kind()))}, {"dim", r.dim()}};
  Json list = Json::array();
  if (r.kind() == ReductionOp::Kind::GroupAverage) {
    for (const auto& u : r.unitaries()) list.push_back(to_json(u));
    j["unitaries"] = std::move(list);
  } else {
    for (const auto& p : r.decomposition().projectors()) list.push_back(to_json(p));
    j["projectors"] = std::move(list);
  }
  return j;
}

ReductionOp reduction_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw FormatError("reduction: missing string 'kind'");
  }
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "group_average") {
      require_object(j, "reduction", {"kind", "dim", "unitaries"});
      const int n = positive_int(j["dim"], "reduction.dim");
      return ReductionOp::group_average(matrix_list(j["unitaries"], n, "reduction.unitaries"));
    }
    if (kind == "measurement" || kind == "lower_triangularize") {
      require_object(j, "reduction", {"kind", "dim", "projectors"});
      const int n = positive_int(j["dim"], "reduction.dim");
      DecompositionOfUnity d(matrix_list(j["projectors"], n, "reduction.projectors"));
      return kind == "measurement" ? ReductionOp::measurement(std::move(d))
                                   : ReductionOp::lower_triangularize(std::move(d));
    }
  } catch (const ContractError& e) {
    throw FormatError(e.what());
  }
  throw FormatError("reduction: unknown kind '" + kind + "'");
}

}  // namespace lps::io
