#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace loewner {

using Complex = std::complex<double>;

// Thrown when a forward slit map is evaluated on a point lying on or inside
// the slit it removes. For evolution loops this is a valid outcome and is
// handled without exceptions (see point_evolution).
class SwallowedError : public std::runtime_error {
 public:
  explicit SwallowedError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// sqrt((z-c)^2 + 4dt) + c evaluated on the branch with argument in (0, pi)
// (cut along the nonnegative reals), written as u*sqrt(1 + 4dt/u^2) with the
// principal square root. For u in the closed upper halfplane off the slit the
// radicand avoids the principal cut, and the two prongs of the real axis get
// the correct opposite signs. Points exactly on an axis are handled exactly,
// which keeps constant-drive traces exact per step.
inline Complex forward_branch(Complex z, double drive, double dt,
                              bool* on_or_inside_slit) {
  *on_or_inside_slit = false;
  if (dt == 0.0) return z;
  const Complex u = z - drive;
  if (u.imag() == 0.0) {
    const double x = u.real();
    if (x == 0.0) {
      *on_or_inside_slit = true;  // base of the slit
      return Complex(drive, 0.0);
    }
    const double s = std::sqrt(x * x + 4.0 * dt);
    return Complex(drive + std::copysign(s, x), 0.0);
  }
  if (u.real() == 0.0) {
    const double y = u.imag();
    const double s = y * y - 4.0 * dt;
    if (s >= 0.0) return Complex(drive, std::sqrt(s));
    *on_or_inside_slit = true;  // interior of the slit maps to the real line
    return Complex(drive + std::sqrt(-s), 0.0);
  }
  const Complex w = u * std::sqrt(1.0 + 4.0 * dt / (u * u));
  return drive + w;
}

}  // namespace detail

// g(z) = sqrt((z-drive)^2 + 4dt) + drive: removes the vertical slit
// [drive, drive + 2i*sqrt(dt)] and maps its complement in the closed upper
// halfplane onto the closed upper halfplane. dt = 0 returns z exactly.
// Signals SWALLOWED for z on or strictly inside the slit (excluding the tip,
// which maps to the drive point).
inline Complex slit_map_forward(Complex z, double drive, double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("slit_map_forward: dt < 0");
  if (z.imag() < -1e-12)
    throw std::invalid_argument("slit_map_forward: z below the real line");
  bool swallowed = false;
  const Complex w = detail::forward_branch(z, drive, dt, &swallowed);
  if (swallowed || w.imag() < -1e-9)
    throw SwallowedError("slit_map_forward: point on or inside the slit");
  return w;
}

// Inverse map f(w) = drive + sqrt((w-drive)^2 - 4dt) with the same branch:
// maps the closed upper halfplane onto the halfplane minus the slit.
// w = drive returns the slit tip drive + 2i*sqrt(dt).
inline Complex slit_map_inverse(Complex w, double drive, double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("slit_map_inverse: dt < 0");
  if (dt == 0.0) return w;
  const Complex v = w - drive;
  if (v.imag() == 0.0) {
    const double x = v.real();
    const double s = x * x - 4.0 * dt;
    if (s >= 0.0) return Complex(drive + std::copysign(std::sqrt(s), x), 0.0);
    return Complex(drive, std::sqrt(-s));  // boundary value on the slit
  }
  if (v.real() == 0.0) {
    const double y = v.imag();
    return Complex(drive, std::sqrt(y * y + 4.0 * dt));
  }
  return drive + v * std::sqrt(1.0 - 4.0 * dt / (v * v));
}

}  // namespace loewner
