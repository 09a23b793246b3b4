#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "chordgeom/common.hpp"

namespace chordgeom {

class UnitVector {
 public:
  UnitVector() = default;
  explicit UnitVector(const Vec& v);
  const Vec& coords() const { return v_; }
  operator const Vec&() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[i]; }

 private:
  Vec v_;
};

struct FacetGeometry {
  Vec normal;
  double offset = 0.0;
  // Cyclic order for n = 3; unordered otherwise.
  std::vector<Vec> vertices;
  // Each simplex is stored as its d+1 corner points (d = n-1).
  std::vector<std::vector<Vec>> simplices;
  double area = 0.0;
  bool redundant = false;
};

struct Interval {
  double lo = 0.0;
  double hi = -1.0;
  bool empty() const { return !(hi >= lo); }
  double length() const { return empty() ? 0.0 : hi - lo; }
};

// Intersection of halfspaces {x : x.u_i <= h_i}; the Wulff shape of (u, h).
class HPolytope {
 public:
  HPolytope(std::vector<Vec> normals, std::vector<double> offsets);

  int dim() const { return n_; }
  int size() const { return static_cast<int>(normals_.size()); }
  const std::vector<Vec>& normals() const { return normals_; }
  const std::vector<double>& offsets() const { return offsets_; }
  const Mat& A() const { return A_; }
  const Vec& h() const { return h_; }

  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<FacetGeometry>& facets() const { return facets_; }
  bool redundant(int i) const { return facets_[i].redundant; }
  int active_count() const;

  double volume() const { return volume_; }
  double surface_area() const { return surface_; }
  const Vec& centroid() const { return centroid_; }
  const Vec& chebyshev_center() const { return cheb_center_; }
  double inradius() const { return cheb_radius_; }
  double diameter() const { return diameter_; }
  double circumradius(const Vec& c) const;

  double support(const Vec& v) const;
  // Support numbers of the realized body on its own normals.
  std::vector<double> realized_offsets() const;
  Interval clip(const Vec& z, const Vec& u) const;
  bool contains(const Vec& x, double tol = 0.0) const;
  // max_i (u_i.x - h_i): negative inside, zero on the boundary.
  double violation(const Vec& x) const;

  HPolytope translated(const Vec& y) const;
  HPolytope scaled(double t) const;

 private:
  int n_ = 0;
  std::vector<Vec> normals_;
  std::vector<double> offsets_;
  Mat A_;
  Vec h_;
  std::vector<Vec> vertices_;
  std::vector<FacetGeometry> facets_;
  double volume_ = 0.0;
  double surface_ = 0.0;
  Vec centroid_;
  Vec cheb_center_;
  double cheb_radius_ = 0.0;
  double diameter_ = 0.0;
};

HPolytope wulff(const std::vector<Vec>& normals, const std::vector<double>& h);
const std::vector<FacetGeometry>& facet_decomposition(const HPolytope& P);

class VPolytope {
 public:
  explicit VPolytope(const std::vector<Vec>& points);
  int dim() const { return hrep_.dim(); }
  const std::vector<Vec>& vertices() const { return hrep_.vertices(); }
  const HPolytope& hrep() const { return hrep_; }

 private:
  HPolytope hrep_;
};

struct Ball {
  Ball(Vec c, double r);
  Vec center;
  double radius;
  int dim() const { return static_cast<int>(center.size()); }
};

class Ellipsoid {
 public:
  // Axes are sorted ascending on construction; the frame columns follow.
  Ellipsoid(Vec center, Vec semi_axes, std::optional<Mat> frame = std::nullopt);
  int dim() const { return static_cast<int>(center_.size()); }
  const Vec& center() const { return center_; }
  const Vec& semi_axes() const { return a_; }
  // Columns are the orthonormal axis directions e_1..e_n.
  const Mat& frame() const { return frame_; }
  Vec to_local(const Vec& x) const { return frame_.transpose() * (x - center_); }
  Vec to_world(const Vec& y) const { return center_ + frame_ * y; }

 private:
  Vec center_;
  Vec a_;
  Mat frame_;
};

using Body = std::variant<HPolytope, VPolytope, Ball, Ellipsoid>;

int dim(const Body& K);
const HPolytope* as_polytope(const Body& K);
bool is_smooth(const Body& K);

double support(const Body& K, const Vec& v);
Interval clip(const Body& K, const Vec& z, const Vec& u);
double radial_extended(const Body& K, const Vec& z, const Vec& u);
double xray(const Body& K, const Vec& x, const Vec& u);
double volume(const Body& K);
double surface_area(const Body& K);
double diameter(const Body& K);
Vec reference_center(const Body& K);
double circumradius(const Body& K, const Vec& c);
// Signed level: negative inside, ~0 on the boundary, positive outside (scale-relative).
double boundary_level(const Body& K, const Vec& x);
// Outer unit normal at a boundary point (facet normal for polytopes).
Vec outer_normal(const Body& K, const Vec& z);
std::pair<Vec, Vec> bounding_box(const Body& K);
Body translate(const Body& K, const Vec& y);
Body scale(const Body& K, double t);

double hausdorff_distance(const Body& K, const Body& L, int grid_nodes = 64);

// Mean curvature (arithmetic mean of principal curvatures) at a boundary point.
double ellipsoid_mean_curvature(const Ellipsoid& E, const Vec& z);

}  // namespace chordgeom
