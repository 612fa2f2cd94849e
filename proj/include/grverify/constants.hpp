#pragma once

// Algebraic constants of the evaluation and the identities they satisfy.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace grverify {

struct Constants {
  double k;           // 2 - sqrt3, the elliptic modulus of the Delta-form
  double k_prime;     // sqrt(1 - k^2)
  double inv_k;       // 2 + sqrt3
  double alpha;       // arcsin(sqrt k)
  double a_upper;     // (1 + sqrt3) / 2
  double coeff_a;     // sqrt3 / (2 sqrt2)
  double coeff_b;     // (2 sqrt3 - 3) / (2 sqrt2)
  double C0;          // additive constant of the t-integral form
  double wrong_value;  // pi / (2 sqrt6), the value printed in the table
};

inline Constants make_constants() {
  const double s2 = std::numbers::sqrt2;
  const double s3 = std::numbers::sqrt3;
  Constants c{};
  c.k = 2.0 - s3;
  c.k_prime = std::sqrt((1.0 - c.k) * (1.0 + c.k));
  c.inv_k = 2.0 + s3;
  c.alpha = std::asin(std::sqrt(c.k));
  c.a_upper = 0.5 * (1.0 + s3);
  c.coeff_a = s3 / (2.0 * s2);
  c.coeff_b = (2.0 * s3 - 3.0) / (2.0 * s2);
  c.C0 = std::sqrt(21.0 + 12.0 * s3) / s2 * std::log((3.0 + 2.0 * s3) / 6.0);
  c.wrong_value = std::numbers::pi / (2.0 * std::sqrt(6.0));
  return c;
}

inline const Constants& constants() {
  static const Constants c = make_constants();
  return c;
}

struct IdentityResidual {
  std::string name;
  double residual;  // signed lhs - rhs, relative where noted in the name
};

/// Every exact identity among the constants, as residuals that vanish in exact arithmetic.
inline std::vector<IdentityResidual> constant_identities() {
  const Constants& c = constants();
  const double s2 = std::numbers::sqrt2;
  const double s3 = std::numbers::sqrt3;
  const double sk = std::sqrt(c.k);
  const double sin_alpha = std::sin(c.alpha);
  const double c0_prefactor = std::sqrt(21.0 + 12.0 * s3) / s2;
  const double t_prefactor = 2.0 * s3 / sk;
  const double k1 = (c.inv_k - 1.0) / (c.inv_k + 1.0);
  const double g = 2.0 / (c.inv_k + 1.0);
  const double alpha3 = std::sqrt(2.0 - s3);

  std::vector<IdentityResidual> out;
  out.push_back({"k * (2 + sqrt3) = 1", c.k * c.inv_k - 1.0});
  out.push_back({"(1 + sqrt3)/2 = 1/(1 - k)", c.a_upper - 1.0 / (1.0 - c.k)});
  out.push_back({"sin^2(alpha) = k", sin_alpha * sin_alpha - c.k});
  out.push_back({"k^2 + k'^2 = 1", c.k * c.k + c.k_prime * c.k_prime - 1.0});
  out.push_back({"C0 + (2 sqrt3/sqrt k)((1 + sqrt3)/4) ln(4 sqrt3 - 6) = 0",
                 c.C0 + t_prefactor * 0.25 * (1.0 + s3) * std::log(4.0 * s3 - 6.0)});
  out.push_back({"ln((3 + 2 sqrt3)/6) + ln(4 sqrt3 - 6) = 0",
                 std::log((3.0 + 2.0 * s3) / 6.0) + std::log(4.0 * s3 - 6.0)});
  out.push_back({"sqrt(21 + 12 sqrt3)/sqrt2 = (2 sqrt3/sqrt k)(1 + sqrt3)/4",
                 c0_prefactor - t_prefactor * 0.25 * (1.0 + s3)});
  out.push_back({"sqrt(2 - sqrt3) sqrt(698 + 391 sqrt3) = 14 + 3 sqrt3 (relative)",
                 (alpha3 * std::sqrt(698.0 + 391.0 * s3) - (14.0 + 3.0 * s3)) /
                     (14.0 + 3.0 * s3)});
  out.push_back({"(2 sqrt3/sqrt k)(3 sqrt3 - 5)/8 = b",
                 t_prefactor * (3.0 * s3 - 5.0) / 8.0 - c.coeff_b});
  out.push_back({"(2 sqrt3/sqrt k)(11 sqrt3 - 5)/(8 sqrt2 sqrt(698 + 391 sqrt3)) = (3 - sqrt3)/(4 sqrt2)",
                 t_prefactor * (11.0 * s3 - 5.0) / (8.0 * s2 * std::sqrt(698.0 + 391.0 * s3)) -
                     (3.0 - s3) / (4.0 * s2)});
  out.push_back({"4(4 + 3 sqrt3) = (3 + 2 sqrt3)^2 - 5",
                 4.0 * (4.0 + 3.0 * s3) - ((3.0 + 2.0 * s3) * (3.0 + 2.0 * s3) - 5.0)});
  out.push_back({"4 sqrt(6 + 3 sqrt3) / (2 sqrt2 (3 + sqrt3)) = 1",
                 4.0 * std::sqrt(6.0 + 3.0 * s3) / (2.0 * s2 * (3.0 + s3)) - 1.0});
  out.push_back({"((1/k - 1)/(1/k + 1))^2 = 1/3", k1 * k1 - 1.0 / 3.0});
  out.push_back({"sqrt(2 - sqrt3)^2 = 2 - sqrt3", alpha3 * alpha3 - c.k});
  out.push_back({"g = 2/(1/k + 1) = (3 - sqrt3)/3", g - (3.0 - s3) / 3.0});
  out.push_back({"g/k = (3 + sqrt3)/3", g * c.inv_k - (3.0 + s3) / 3.0});
  return out;
}

}  // namespace grverify
