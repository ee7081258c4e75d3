#include "exch/bound_report.hpp"

#include <cmath>

#include "exch/error.hpp"

namespace exch {

BoundReport make_report(std::string kind, double a2, double b, double dim_factor, double delta) {
  if (!(a2 >= 0.0)) throw DomainError("make_report: negative variance scale");
  BoundReport r;
  r.kind = std::move(kind);
  r.delta = delta;
  r.dim_factor = dim_factor;
  r.a2 = a2;
  r.a = std::sqrt(a2);
  r.b = b;
  const double l = log_term(dim_factor, delta);
  r.variance_term = r.a * std::sqrt(2.0 * l);
  r.linear_term = b * l;
  r.threshold = r.variance_term + r.linear_term;
  // Chernoff optimum of λt − λ²a²/(2(1 − bλ)) at t = threshold: λ* = sqrt(2l)/(a + b·sqrt(2l)).
  if (r.a > 0.0) {
    const double s = std::sqrt(2.0 * l);
    r.lambda_opt = s / (r.a + b * s);
  }
  return r;
}

}  // namespace exch
