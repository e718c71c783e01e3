#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "gapgrad/geometry.hpp"

namespace gapgrad {

enum class BoundaryKind { Neumann, Dirichlet };

const char* to_string(BoundaryKind kind);

/// Boundary data on the outer circle as a finite trigonometric series
///
///   g(t) = sum_{n>=1} a_n cos(n t) + b_n sin(n t),
///
/// where t parametrizes the un-translated outer circle by
/// (r_e + r_e cos t, r_e sin t). There is no n = 0 term, so the data is
/// mean-zero by construction. Modes above `mode_cap` are dropped.
class FourierBoundaryData {
 public:
  static constexpr std::size_t kDefaultModeCap = 64;

  FourierBoundaryData(BoundaryKind kind, double r_e, std::vector<double> cos_coeffs,
                      std::vector<double> sin_coeffs, std::size_t mode_cap = kDefaultModeCap);

  BoundaryKind kind() const { return kind_; }
  double radius() const { return r_e_; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }
  std::size_t mode_count() const { return std::max(cos_.size(), sin_.size()); }
  bool truncated() const { return truncated_; }

  double evaluate(double t) const;

  /// sum n^{1+delta} (|a_n| + |b_n|); finite for any stored data, reported as
  /// a regularity proxy.
  double regularity_norm(double delta) const;

 private:
  BoundaryKind kind_;
  double r_e_;
  std::vector<double> cos_;
  std::vector<double> sin_;
  bool truncated_ = false;
};

/// Harmonic polynomial Re f(w), f(w) = c_0 + sum_{n>=1} c_n w^n with
/// w = (z - center) / radius. With c_n = A_n - i B_n the real form is
/// sum (rho / radius)^n (A_n cos n phi + B_n sin n phi) in polar coordinates
/// about the centre. Evaluation is restricted to the closed disk.
class HarmonicDiskField {
 public:
  /// The zero field on the given disk.
  HarmonicDiskField(CartesianPoint center, double radius);
  HarmonicDiskField(CartesianPoint center, double radius, std::vector<Complex> coeffs,
                    double constant = 0.0);

  CartesianPoint center() const { return center_; }
  double radius() const { return radius_; }
  double constant() const { return constant_; }
  /// coeffs()[n-1] is c_n.
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  bool contains(CartesianPoint x) const;

  /// Same field with the centre moved by (dx, 0): x -> H(x - (dx, 0)).
  HarmonicDiskField translated(double dx) const;

  double value(CartesianPoint x) const;
  Vec2 gradient(CartesianPoint x) const;

  /// Upper bound of |grad H| over the closed disk: sum n |c_n| / radius.
  double gradient_bound() const;

  /// Value/gradient without the disk check; valid for the polynomial anywhere.
  double value_unchecked(CartesianPoint x) const;
  Vec2 gradient_unchecked(CartesianPoint x) const;

 private:
  void check(CartesianPoint x) const;

  CartesianPoint center_;
  double radius_;
  std::vector<Complex> coeffs_;
  double constant_ = 0.0;
};

/// Background field: H with dH/dnu = g (Neumann) or H_d = g_d (Dirichlet) on
/// the un-translated outer circle. Neumann mode n maps to (r_e/n)(rho/r_e)^n,
/// Dirichlet mode n to (rho/r_e)^n.
HarmonicDiskField harmonic_extension(const FourierBoundaryData& data);

double eval_field(const HarmonicDiskField& field, CartesianPoint x);
Vec2 grad_field(const HarmonicDiskField& field, CartesianPoint x);

struct BlowUpDrivers {
  double c1 = 0.0;
  double c2 = 0.0;
};

/// (dH/dx1, dH/dx2) at the near-contact point of the outer circle, i.e. the
/// point center - (radius, 0); this is the origin of the un-translated frame.
BlowUpDrivers extract_C1C2(const HarmonicDiskField& field);

}  // namespace gapgrad
