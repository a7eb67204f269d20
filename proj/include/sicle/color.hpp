#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace sicle::color {

// sRGB (D65) <-> CIELAB. L in [0,100], a/b unclamped. The white point is
// taken as the row sums of the RGB->XYZ matrix so that (1,1,1) maps to
// exactly (100,0,0).

namespace detail {

constexpr double kM[3][3] = {
    {0.4123908, 0.3575843, 0.1804808},
    {0.2126390, 0.7151687, 0.0721923},
    {0.0193308, 0.1191948, 0.9505322},
};
constexpr double kWhite[3] = {
    kM[0][0] + kM[0][1] + kM[0][2],
    kM[1][0] + kM[1][1] + kM[1][2],
    kM[2][0] + kM[2][1] + kM[2][2],
};

inline double linearize(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

inline double delinearize(double c) {
  return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

inline double lab_f(double t) {
  constexpr double kEps = 216.0 / 24389.0;
  constexpr double kKappa = 24389.0 / 27.0;
  return t > kEps ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

inline double lab_f_inv(double ft) {
  constexpr double kEps = 216.0 / 24389.0;
  constexpr double kKappa = 24389.0 / 27.0;
  const double t3 = ft * ft * ft;
  return t3 > kEps ? t3 : (116.0 * ft - 16.0) / kKappa;
}

}  // namespace detail

// r,g,b in [0,1].
inline std::array<double, 3> srgb_to_lab(double r, double g, double b) {
  using namespace detail;
  const double rl = linearize(r), gl = linearize(g), bl = linearize(b);
  double xyz[3];
  for (int i = 0; i < 3; ++i)
    xyz[i] = (kM[i][0] * rl + kM[i][1] * gl + kM[i][2] * bl) / kWhite[i];
  const double fx = lab_f(xyz[0]), fy = lab_f(xyz[1]), fz = lab_f(xyz[2]);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

// Inverse; output clamped to [0,1] per channel.
inline std::array<double, 3> lab_to_srgb(double L, double a, double b) {
  using namespace detail;
  const double fy = (L + 16.0) / 116.0;
  const double fx = fy + a / 500.0;
  const double fz = fy - b / 200.0;
  const double xyz[3] = {lab_f_inv(fx) * kWhite[0], lab_f_inv(fy) * kWhite[1],
                         lab_f_inv(fz) * kWhite[2]};
  // Inverse of kM.
  constexpr double kInv[3][3] = {
      {3.2409699419, -1.5373831776, -0.4986107603},
      {-0.9692436363, 1.8759675015, 0.0415550574},
      {0.0556300797, -0.2039769589, 1.0569715142},
  };
  std::array<double, 3> rgb;
  for (int i = 0; i < 3; ++i) {
    const double lin = kInv[i][0] * xyz[0] + kInv[i][1] * xyz[1] + kInv[i][2] * xyz[2];
    rgb[i] = std::clamp(delinearize(lin), 0.0, 1.0);
  }
  return rgb;
}

}  // namespace sicle::color
