#include "quadtor/rankoracle.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace quadtor {

std::string to_string(RankSource s) {
  switch (s) {
    case RankSource::BuiltIn:
      return "built-in";
    case RankSource::UserFile:
      return "user-file";
    case RankSource::SearchCertificate:
      return "search-certificate";
  }
  return "?";
}

std::string to_string(RankResolution r) {
  switch (r) {
    case RankResolution::Zero:
      return "zero";
    case RankResolution::Positive:
      return "positive";
    case RankResolution::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string RankRecord::key() const { return label + "," + (k_level ? "K:" : "") + std::to_string(d); }

namespace {

std::string interval_str(int lo, const std::optional<int>& hi) {
  return "[" + std::to_string(lo) + ", " + (hi ? std::to_string(*hi) : std::string("inf")) + "]";
}

RankResolution resolve(int lo, const std::optional<int>& hi) {
  if (hi && *hi == 0) return RankResolution::Zero;
  if (lo >= 1) return RankResolution::Positive;
  return RankResolution::Inconclusive;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int parse_int(const std::string& s, const std::string& where) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(where + ": expected an integer, got '" + s + "'");
  }
  if (pos != s.size()) throw std::runtime_error(where + ": expected an integer, got '" + s + "'");
  return v;
}

RankRecord builtin_record(const std::string& label, long d, bool k_level, int r) {
  RankRecord rec;
  rec.label = label;
  rec.d = d;
  rec.k_level = k_level;
  rec.lo = r;
  rec.hi = r;
  rec.source = RankSource::BuiltIn;
  rec.origin = "built-in";
  return rec;
}

}  // namespace

std::string RankInfo::interval() const { return interval_str(lo, hi); }

RankOracle RankOracle::with_builtin_data() {
  RankOracle o;
  for (const char* label : {"X1_11", "X1_14", "X1_2_10", "X1_2_12"}) o.add(builtin_record(label, 17, true, 1));
  o.add(builtin_record("X1_15", 17, true, 0));
  o.add(builtin_record("X1_13", 1, false, 0));
  o.add(builtin_record("X1_13", 17, false, 2));
  o.add(builtin_record("X1_16", 17, true, 0));
  o.add(builtin_record("X1_18", 17, true, 0));
  return o;
}

void RankOracle::add(const RankRecord& r) {
  mc_entry(r.label);
  if (r.lo < 0 || (r.hi && *r.hi < r.lo)) throw std::runtime_error("invalid rank interval for " + r.key());
  if (!r.k_level && r.d != 1 && (r.d <= 1 || !is_squarefree(r.d))) throw std::runtime_error("invalid twist in " + r.key());
  auto it = records_.find(r.key());
  if (it == records_.end()) {
    records_.emplace(r.key(), r);
    return;
  }
  RankRecord& cur = it->second;
  int lo = std::max(cur.lo, r.lo);
  std::optional<int> hi = cur.hi;
  if (r.hi) hi = hi ? std::min(*hi, *r.hi) : r.hi;
  if (hi && *hi < lo)
    throw std::runtime_error("contradictory rank data for " + r.key() + ": " + interval_str(cur.lo, cur.hi) + " (" +
                             cur.origin + ") vs " + interval_str(r.lo, r.hi) + " (" + r.origin + ")");
  if (lo != cur.lo || hi != cur.hi) {
    cur.lo = lo;
    cur.hi = hi;
    cur.origin += "; " + r.origin;
    if (r.source == RankSource::BuiltIn) cur.source = RankSource::BuiltIn;
  }
}

size_t RankOracle::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rank data file " + path);
  return load_stream(in, path);
}

size_t RankOracle::load_stream(std::istream& in, const std::string& origin) {
  std::string line;
  size_t n = 0, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = origin + ":" + std::to_string(lineno);
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) f.push_back(trim(tok));
    if (f.size() != 4) throw std::runtime_error(where + ": expected label,d,rank_lo,rank_hi");
    RankRecord r;
    r.label = f[0];
    try {
      mc_entry(r.label);
    } catch (const std::invalid_argument&) {
      throw std::runtime_error(where + ": unknown curve label '" + r.label + "'");
    }
    std::string dfield = f[1];
    if (dfield.rfind("K:", 0) == 0) {
      r.k_level = true;
      dfield = trim(dfield.substr(2));
    }
    r.d = parse_int(dfield, where);
    if (r.k_level && (r.d <= 1 || !is_squarefree(r.d))) throw std::runtime_error(where + ": bad field K:" + dfield);
    if (!r.k_level && r.d != 1 && (r.d <= 1 || !is_squarefree(r.d)))
      throw std::runtime_error(where + ": bad twist " + dfield);
    r.lo = parse_int(f[2], where);
    if (f[3] != "inf") r.hi = parse_int(f[3], where);
    if (r.lo < 0 || (r.hi && *r.hi < r.lo)) throw std::runtime_error(where + ": invalid rank interval");
    r.source = RankSource::UserFile;
    r.origin = where;
    add(r);
    ++n;
  }
  return n;
}

const RankRecord* RankOracle::find(const std::string& label, long d, bool k_level) const {
  RankRecord probe;
  probe.label = label;
  probe.d = d;
  probe.k_level = k_level;
  auto it = records_.find(probe.key());
  return it == records_.end() ? nullptr : &it->second;
}

RankInfo RankOracle::rank_over_K(const std::string& label, long d) const {
  mc_entry(label);
  if (d <= 1 || !is_squarefree(d)) throw std::invalid_argument("rank query needs squarefree d > 1");
  RankInfo info;
  const RankRecord* base = find(label, 1, false);
  const RankRecord* twist = find(label, d, false);
  const RankRecord* klevel = find(label, d, true);
  if (klevel) {
    info.lo = klevel->lo;
    info.hi = klevel->hi;
    info.provenance = to_string(klevel->source) + " K-level record " + klevel->key() + " (" + klevel->origin + ")";
  } else {
    info.lo = (base ? base->lo : 0) + (twist ? twist->lo : 0);
    if (base && twist && base->hi && twist->hi) info.hi = *base->hi + *twist->hi;
    auto part = [](const RankRecord* r, const std::string& what) {
      return r ? what + " " + interval_str(r->lo, r->hi) + " " + to_string(r->source) + " (" + r->origin + ")"
               : what + " missing";
    };
    info.provenance = "additivity: " + part(base, "base") + "; " + part(twist, "twist by " + std::to_string(d));
  }
  info.resolution = resolve(info.lo, info.hi);
  return info;
}

std::string RankCertificate::str() const {
  return to_string(point) + " has order > " + std::to_string(torsion_exponent) + " (torsion " + torsion.structure() + ")";
}

std::optional<RankCertificate> rk_certify_positive(const CatalogEntry& e, long d, long height) {
  if (e.kind != ModelKind::Elliptic) throw std::invalid_argument(e.label + " is not an elliptic model");
  QuadField K(d);
  EllipticCurveK E = e.elliptic(d);
  RankCertificate cert;
  cert.torsion = ec_torsion_over_K(e.elliptic(), K);
  cert.torsion_exponent = cert.torsion.n;
  for (const ECPointK& P : ec_point_search(E, K, height)) {
    if (!ec_on_curve(E, P)) continue;
    if (!ec_point_order(E, P, cert.torsion_exponent)) cert.certified.push_back(P);
  }
  if (cert.certified.empty()) return std::nullopt;
  cert.point = cert.certified.front();
  if (!ec_on_curve(E, cert.point) || ec_point_order(E, cert.point, cert.torsion_exponent))
    throw std::logic_error("unsound rank certificate");
  return cert;
}

}  // namespace quadtor
