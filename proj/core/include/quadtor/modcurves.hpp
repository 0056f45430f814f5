#pragma once

#include <array>
#include <string>
#include <vector>

#include "quadtor/ellcurve.hpp"
#include "quadtor/hyperjac.hpp"
#include "quadtor/poly.hpp"
#include "quadtor/qfield.hpp"

namespace quadtor {

// Z/m + Z/n with m | n.
struct TorsionGroupId {
  int m = 1, n = 1;

  bool operator==(const TorsionGroupId& o) const { return m == o.m && n == o.n; }
  bool operator!=(const TorsionGroupId& o) const { return !(*this == o); }
  bool operator<(const TorsionGroupId& o) const { return m != o.m ? m < o.m : n < o.n; }
  std::string str() const;
};

// The 26 groups occurring over quadratic fields: Z/n (n = 1..16, 18), Z/2 + Z/2n (n = 1..6),
// Z/3 + Z/3, Z/3 + Z/6, Z/4 + Z/4.
const std::vector<TorsionGroupId>& torsion_groups();
TorsionGroupId parse_group(const std::string& text);

enum class ModelKind { Elliptic, Hyperelliptic };
enum class Screen { None, Screen13, Screen18 };

std::string to_string(ModelKind k);
std::string to_string(Screen s);

struct CatalogEntry {
  std::string label;
  TorsionGroupId target;
  ModelKind kind;
  std::array<long, 5> ainvs{};  // elliptic models
  PolyQ f;                      // hyperelliptic models, y^2 = f(x)
  PolyQ cusp_x;
  std::string infinity;  // "O", "inf" or "inf+ inf-"
  Screen screen = Screen::None;
  std::string equation;

  EllipticCurveK elliptic(long d = 0) const;
  HyperCurve hyper() const;
};

const std::vector<CatalogEntry>& mc_catalog();
const CatalogEntry& mc_entry(const std::string& label);
// Entry whose non-cuspidal points parameterize g, or nullptr.
const CatalogEntry* mc_entry_for(const TorsionGroupId& g);

struct CuspPoint {
  enum class Kind { Affine, Infinity, InfinityPlus, InfinityMinus };
  Kind kind = Kind::Affine;
  QuadElem x, y;

  bool operator==(const CuspPoint& o) const { return kind == o.kind && x == o.x && y == o.y; }
  bool operator<(const CuspPoint& o) const;
  std::string str() const;
};

struct CuspSet {
  std::vector<CuspPoint> points;  // sorted, infinity first

  bool contains(const CuspPoint& P) const;
  bool contains_affine(const QuadElem& x, const QuadElem& y) const;
  size_t size() const { return points.size(); }
  std::string str() const;
};

// d = 0 gives the rational cusps.
CuspSet mc_cusps_over_K(const CatalogEntry& e, long d);
CuspSet mc_cusps_over_K(const CatalogEntry& e, const QuadField& K);

struct ScreenResult {
  bool pass = true;
  std::string reason;
};

ScreenResult mc_screen(const CatalogEntry& e, long d);

}  // namespace quadtor
