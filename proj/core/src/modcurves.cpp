#include "quadtor/modcurves.hpp"

#include <algorithm>
#include <stdexcept>

#include "quadtor/polyarith.hpp"

namespace quadtor {

std::string TorsionGroupId::str() const {
  if (m == 1) return "Z/" + std::to_string(n);
  return "Z/" + std::to_string(m) + " + Z/" + std::to_string(n);
}

const std::vector<TorsionGroupId>& torsion_groups() {
  static const std::vector<TorsionGroupId> groups = [] {
    std::vector<TorsionGroupId> g;
    for (int n = 1; n <= 16; ++n) g.push_back({1, n});
    g.push_back({1, 18});
    for (int n = 1; n <= 6; ++n) g.push_back({2, 2 * n});
    g.push_back({3, 3});
    g.push_back({3, 6});
    g.push_back({4, 4});
    return g;
  }();
  return groups;
}

TorsionGroupId parse_group(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  auto number = [&](const std::string& part) {
    std::string t = part;
    if (t.rfind("Z/", 0) == 0) t = t.substr(2);
    if (t.size() > 1 && t.back() == 'Z' && t[t.size() - 2] != '/') t.pop_back();
    if (t.empty() || !std::all_of(t.begin(), t.end(), ::isdigit)) throw std::invalid_argument("bad torsion group: " + text);
    return std::stoi(t);
  };
  TorsionGroupId g;
  auto plus = s.find('+');
  auto x = s.find('x');
  if (plus != std::string::npos) {
    g = {number(s.substr(0, plus)), number(s.substr(plus + 1))};
  } else if (x != std::string::npos) {
    g = {number(s.substr(0, x)), number(s.substr(x + 1))};
  } else {
    g = {1, number(s)};
  }
  if (std::find(torsion_groups().begin(), torsion_groups().end(), g) == torsion_groups().end())
    throw std::invalid_argument("not one of the 26 quadratic torsion groups: " + text);
  return g;
}

std::string to_string(ModelKind k) { return k == ModelKind::Elliptic ? "elliptic" : "hyperelliptic"; }

std::string to_string(Screen s) {
  switch (s) {
    case Screen::None:
      return "none";
    case Screen::Screen13:
      return "screen13";
    case Screen::Screen18:
      return "screen18";
  }
  return "?";
}

EllipticCurveK CatalogEntry::elliptic(long d) const {
  if (kind != ModelKind::Elliptic) throw std::logic_error(label + " is not an elliptic model");
  return EllipticCurveK::from_ints(ainvs, d);
}

HyperCurve CatalogEntry::hyper() const {
  if (kind != ModelKind::Hyperelliptic) throw std::logic_error(label + " is not a hyperelliptic model");
  return HyperCurve(f);
}

namespace {

PolyQ product(std::initializer_list<PolyQ> fs) {
  PolyQ r = poly_q({1});
  for (const auto& f : fs) r = r * f;
  return r;
}

CatalogEntry elliptic_entry(std::string label, TorsionGroupId g, std::array<long, 5> a, PolyQ cusp_x, std::string eq) {
  CatalogEntry e;
  e.label = std::move(label);
  e.target = g;
  e.kind = ModelKind::Elliptic;
  e.ainvs = a;
  e.cusp_x = std::move(cusp_x);
  e.infinity = "O";
  e.equation = std::move(eq);
  return e;
}

CatalogEntry hyper_entry(std::string label, TorsionGroupId g, PolyQ f, PolyQ cusp_x, Screen screen, std::string eq) {
  CatalogEntry e;
  e.label = std::move(label);
  e.target = g;
  e.kind = ModelKind::Hyperelliptic;
  e.f = std::move(f);
  e.cusp_x = std::move(cusp_x);
  e.infinity = e.f.degree() == 5 ? "inf" : "inf+ inf-";
  e.screen = screen;
  e.equation = std::move(eq);
  return e;
}

std::vector<CatalogEntry> build_catalog() {
  const PolyQ x = poly_q({0, 1});
  const PolyQ xm1 = poly_q({-1, 1}), xp1 = poly_q({1, 1});
  std::vector<CatalogEntry> c;
  // Cusps of X1(11) and X1(14) outside Q have degree 5 and 3; only the rational factor matters here.
  c.push_back(elliptic_entry("X1_11", {1, 11}, {0, -1, -1, 0, 0}, product({x, xm1}), "y^2 - y = x^3 - x^2"));
  c.push_back(hyper_entry("X1_13", {1, 13}, poly_q({1, -4, 6, -2, 1, -2, 1}), product({x, xm1, poly_q({1, 1, -4, 1})}),
                          Screen::Screen13, "y^2 = x^6 - 2x^5 + x^4 - 2x^3 + 6x^2 - 4x + 1"));
  c.push_back(elliptic_entry("X1_14", {1, 14}, {1, 0, 1, -1, 0}, product({x, xm1, xp1}), "y^2 + xy + y = x^3 - x"));
  c.push_back(elliptic_entry("X1_15", {1, 15}, {1, 1, 1, 0, 0},
                             product({x, xp1, poly_q({1, 2, 4, 3, 1}), poly_q({1, 2, -6, -7, 1})}),
                             "y^2 + xy + y = x^3 + x^2"));
  c.push_back(hyper_entry("X1_16", {1, 16}, poly_q({0, -1, 2, 0, 2, 1}),
                          product({x, xm1, xp1, poly_q({-1, -2, 1}), poly_q({-1, 2, 1})}), Screen::None,
                          "y^2 = x(x^2 + 1)(x^2 + 2x - 1)"));
  c.push_back(hyper_entry("X1_18", {1, 18}, poly_q({1, 4, 10, 10, 5, 2, 1}),
                          product({x, xp1, poly_q({1, 1, 1}), poly_q({-1, -3, 1})}), Screen::Screen18,
                          "y^2 = x^6 + 2x^5 + 5x^4 + 10x^3 + 10x^2 + 4x + 1"));
  c.push_back(elliptic_entry("X1_2_10", {2, 10}, {0, 1, 0, -1, 0},
                             product({x, xm1, xp1, poly_q({-1, 1, 1}), poly_q({-1, -4, 1})}), "y^2 = x^3 + x^2 - x"));
  c.push_back(elliptic_entry("X1_2_12", {2, 12}, {0, -1, 0, 1, 0},
                             product({x, xm1, xp1, poly_q({1, 0, 1}), poly_q({1, -4, 1}), poly_q({1, -1, 1})}),
                             "y^2 = x^3 - x^2 + x"));
  return c;
}

int kind_rank(CuspPoint::Kind k) {
  switch (k) {
    case CuspPoint::Kind::Infinity:
      return 0;
    case CuspPoint::Kind::InfinityPlus:
      return 1;
    case CuspPoint::Kind::InfinityMinus:
      return 2;
    case CuspPoint::Kind::Affine:
      return 3;
  }
  return 4;
}

std::vector<QuadElem> roots_in(const PolyQ& f, long d) {
  std::vector<QuadElem> out;
  if (d == 0) {
    for (const auto& [r, m] : rational_roots(f)) out.push_back(QuadElem(r));
  } else {
    for (const auto& [r, m] : poly_roots_in_K(f, QuadField(d))) out.push_back(r);
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& mc_catalog() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

const CatalogEntry& mc_entry(const std::string& label) {
  for (const auto& e : mc_catalog())
    if (e.label == label) return e;
  throw std::invalid_argument("unknown catalog curve: " + label);
}

const CatalogEntry* mc_entry_for(const TorsionGroupId& g) {
  for (const auto& e : mc_catalog())
    if (e.target == g) return &e;
  return nullptr;
}

bool CuspPoint::operator<(const CuspPoint& o) const {
  if (kind != o.kind) return kind_rank(kind) < kind_rank(o.kind);
  if (x != o.x) return x < o.x;
  return y < o.y;
}

std::string CuspPoint::str() const {
  switch (kind) {
    case Kind::Infinity:
      return "inf";
    case Kind::InfinityPlus:
      return "inf+";
    case Kind::InfinityMinus:
      return "inf-";
    case Kind::Affine:
      break;
  }
  return "(" + x.str() + ", " + y.str() + ")";
}

bool CuspSet::contains(const CuspPoint& P) const { return std::binary_search(points.begin(), points.end(), P); }

bool CuspSet::contains_affine(const QuadElem& x, const QuadElem& y) const {
  return contains(CuspPoint{CuspPoint::Kind::Affine, x, y});
}

std::string CuspSet::str() const {
  std::string s = "{";
  for (size_t i = 0; i < points.size(); ++i) s += (i ? ", " : "") + points[i].str();
  return s + "}";
}

CuspSet mc_cusps_over_K(const CatalogEntry& e, long d) {
  if (d != 0) QuadField check(d);
  CuspSet S;
  const QuadElem zero(0, 0, d);
  if (e.kind == ModelKind::Elliptic) {
    S.points.push_back({CuspPoint::Kind::Infinity, zero, zero});
    EllipticCurveK E = e.elliptic(d);
    for (const QuadElem& x : roots_in(e.cusp_x, d)) {
      QuadElem xd = x.in_field(d);
      auto s = sqrt_in_field(E.y_discriminant(xd));
      if (!s) continue;
      QuadElem t = E.a1 * xd + E.a3;
      for (const QuadElem& y : {(-t + *s) / QuadElem(2), (-t - *s) / QuadElem(2)}) {
        CuspPoint P{CuspPoint::Kind::Affine, xd, y};
        if (!E.on_curve(ECPointK::affine(xd, y))) throw std::logic_error("cusp off the model");
        if (!S.contains(P)) {
          S.points.push_back(P);
          std::sort(S.points.begin(), S.points.end());
        }
      }
    }
  } else {
    if (e.f.degree() == 5) {
      S.points.push_back({CuspPoint::Kind::Infinity, zero, zero});
    } else if (rational_sqrt(e.f.lead())) {
      S.points.push_back({CuspPoint::Kind::InfinityPlus, zero, zero});
      S.points.push_back({CuspPoint::Kind::InfinityMinus, zero, zero});
    }
    PolyK fk = poly_k(e.f, d);
    for (const QuadElem& x : roots_in(e.cusp_x, d)) {
      QuadElem xd = x.in_field(d);
      auto s = sqrt_in_field(fk.eval(xd));
      if (!s) continue;
      for (const QuadElem& y : {*s, -*s}) {
        CuspPoint P{CuspPoint::Kind::Affine, xd, y};
        if (!(y * y == fk.eval(xd))) throw std::logic_error("cusp off the model");
        if (!S.contains(P)) {
          S.points.push_back(P);
          std::sort(S.points.begin(), S.points.end());
        }
      }
    }
  }
  std::sort(S.points.begin(), S.points.end());
  return S;
}

CuspSet mc_cusps_over_K(const CatalogEntry& e, const QuadField& K) { return mc_cusps_over_K(e, K.d()); }

ScreenResult mc_screen(const CatalogEntry& e, long d) {
  if (d == 0 || d == 1 || !is_squarefree(d < 0 ? -d : d)) throw std::invalid_argument("screen needs squarefree d != 0, 1");
  const long m8 = ((d % 8) + 8) % 8, m3 = ((d % 3) + 3) % 3;
  switch (e.screen) {
    case Screen::None:
      return {true, ""};
    case Screen::Screen13:
      if (d < 0) return {false, "imaginary field"};
      if (m8 != 1) return {false, "d = " + std::to_string(m8) + " mod 8"};
      return {true, ""};
    case Screen::Screen18:
      if (d == -3) return {true, "d = -3 excluded from the congruence conditions"};
      if (d < 0) return {false, "imaginary field"};
      if (m8 != 1) return {false, "d = " + std::to_string(m8) + " mod 8"};
      if (m3 == 2) return {false, "d = 2 mod 3"};
      return {true, ""};
  }
  return {true, ""};
}

}  // namespace quadtor
