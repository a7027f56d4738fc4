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

#pragma once

namespace fmars::geo {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Pixel (col,row) -> world (x,y):
///   x = a*col + b*row + c
///   y = d*col + e*row + f
///
/// `resolution_m` is the ground sampling distance in meters per pixel. It is
/// carried separately from the coefficients so that rasters in geographic
/// CRSs (degrees) can still drive meter-based operations.
class AffineTransform {
 public:
  /// Validates invertibility and resolution; throws InputError otherwise.
  AffineTransform(double a, double b, double c, double d, double e, double f,
                  double resolution_m);

  /// North-up transform with square pixels of `resolution_m` world units,
  /// origin (upper-left corner) at (origin_x, origin_y).
  static AffineTransform north_up(double origin_x, double origin_y,
                                  double resolution_m);

  static AffineTransform identity() { return {1, 0, 0, 0, 1, 0, 1.0}; }

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double e() const { return e_; }
  double f() const { return f_; }
  double resolution_m() const { return resolution_m_; }
  double determinant() const { return a_ * e_ - b_ * d_; }

  /// Side length of one pixel in world units (sqrt |det|).
  double pixel_size_world() const;

  /// World units per meter; 1 for metric projected CRSs.
  double world_units_per_meter() const {
    return pixel_size_world() / resolution_m_;
  }

  /// Same georeferencing, origin moved to pixel (col0,row0).
  AffineTransform shifted(double col0, double row0) const;

  friend bool operator==(const AffineTransform&,
                         const AffineTransform&) = default;

 private:
  double a_, b_, c_, d_, e_, f_;
  double resolution_m_;
};

Point pixel_to_world(const AffineTransform& t, Point pixel);
Point world_to_pixel(const AffineTransform& t, Point world);

}  // namespace fmars::geo
