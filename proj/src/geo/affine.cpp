// Copyright 2026 The FMARS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fmars/geo/affine.hpp"

#include <cmath>
#include <string>

#include "fmars/core/error.hpp"

namespace fmars::geo {

AffineTransform::AffineTransform(double a, double b, double c, double d,
                                 double e, double f, double resolution_m)
    : a_(a), b_(b), c_(c), d_(d), e_(e), f_(f), resolution_m_(resolution_m) {
  const double det = determinant();
  if (!std::isfinite(det) || det == 0.0) {
    throw InputError("affine transform is not invertible");
  }
  if (!std::isfinite(c) || !std::isfinite(f)) {
    throw InputError("affine transform has non-finite offsets");
  }
  if (!(resolution_m > 0.0) || !std::isfinite(resolution_m)) {
    throw InputError("resolution_m must be positive, got " +
                     std::to_string(resolution_m));
  }
}

AffineTransform AffineTransform::north_up(double origin_x, double origin_y,
                                          double resolution_m) {
  return {resolution_m, 0.0, origin_x, 0.0, -resolution_m, origin_y,
          resolution_m};
}

double AffineTransform::pixel_size_world() const {
  return std::sqrt(std::abs(determinant()));
}

AffineTransform AffineTransform::shifted(double col0, double row0) const {
  const Point origin = pixel_to_world(*this, {col0, row0});
  return {a_, b_, origin.x, d_, e_, origin.y, resolution_m_};
}

Point pixel_to_world(const AffineTransform& t, Point p) {
  return {t.a() * p.x + t.b() * p.y + t.c(), t.d() * p.x + t.e() * p.y + t.f()};
}

Point world_to_pixel(const AffineTransform& t, Point w) {
  const double det = t.determinant();
  const double dx = w.x - t.c();
  const double dy = w.y - t.f();
  return {(t.e() * dx - t.b() * dy) / det, (-t.d() * dx + t.a() * dy) / det};
}

}  // namespace fmars::geo
