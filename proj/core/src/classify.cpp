#include "quadtor/classify.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "quadtor/hyperjac.hpp"

namespace quadtor {

namespace {

constexpr GroupStatus kAll[] = {GroupStatus::AlwaysPresent, GroupStatus::ExcludedCyclotomic, GroupStatus::InfinitelyMany,
                                GroupStatus::PossibleFinite, GroupStatus::Impossible,        GroupStatus::Unresolved};

GroupVerdict verdict(GroupStatus s, std::string why, bool missing = false) { return {s, std::move(why), missing}; }

std::string rank_note(const RankInfo& r) { return "rank " + r.interval() + " from " + r.provenance; }

bool has_rank_data(const RankOracle& oracle, const std::string& label, long d) {
  const auto& recs = oracle.records();
  bool base = recs.count(label + ",1") > 0;
  bool twist = recs.count(label + "," + std::to_string(d)) > 0;
  bool klevel = recs.count(label + ",K:" + std::to_string(d)) > 0;
  return klevel || (base && twist);
}

GroupVerdict classify_elliptic(const CatalogEntry& e, long d, const RankOracle& oracle, const ClassifyConfig& cfg) {
  RankInfo rank = oracle.rank_over_K(e.label, d);
  if (rank.resolution == RankResolution::Positive)
    return verdict(GroupStatus::InfinitelyMany, e.label + " " + rank_note(rank));
  QuadField K(d);
  if (rank.resolution == RankResolution::Inconclusive) {
    if (auto cert = rk_certify_positive(e, d, cfg.height))
      return verdict(GroupStatus::InfinitelyMany, e.label + " rank >= 1 by search certificate: " + cert->str());
    return verdict(GroupStatus::Unresolved,
                   e.label + " " + rank_note(rank) + "; no point of infinite order up to height " + std::to_string(cfg.height),
                   !has_rank_data(oracle, e.label, d));
  }
  TorsionDesc T = ec_torsion_over_K(e.elliptic(), K);
  CuspSet cusps = mc_cusps_over_K(e, K);
  for (const ECPointK& P : T.points) {
    if (P.inf) continue;
    if (!cusps.contains_affine(P.x, P.y))
      return verdict(GroupStatus::PossibleFinite,
                     e.label + " " + rank_note(rank) + "; torsion " + T.structure() + " has non-cusp point " + to_string(P));
  }
  return verdict(GroupStatus::Impossible, e.label + " " + rank_note(rank) + "; torsion " + T.structure() + ", all " +
                                              std::to_string(T.points.size()) + " points are cusps " + cusps.str());
}

std::optional<std::pair<QuadElem, QuadElem>> non_cusp_point(const CatalogEntry& e, long d, long height, const CuspSet& cusps) {
  for (const auto& [x, y] : hj_point_search(e.hyper(), d, height))
    if (!cusps.contains_affine(x, y)) return std::make_pair(x, y);
  return std::nullopt;
}

GroupVerdict classify_hyper(const CatalogEntry& e, long d, const RankOracle& oracle, const ClassifyConfig& cfg) {
  ScreenResult screen = mc_screen(e, d);
  if (!screen.pass) return verdict(GroupStatus::Impossible, e.label + " " + to_string(e.screen) + " fails: " + screen.reason);
  QuadField K(d);
  CuspSet cusps = mc_cusps_over_K(e, K);
  RankInfo rank = oracle.rank_over_K(e.label, d);
  if (rank.resolution != RankResolution::Zero) {
    if (auto P = non_cusp_point(e, d, cfg.height, cusps))
      return verdict(GroupStatus::PossibleFinite, e.label + " " + rank_note(rank) + "; non-cusp point (" + P->first.str() +
                                                      ", " + P->second.str() + "), finitely many points in genus 2");
    return verdict(GroupStatus::Unresolved,
                   e.label + " " + rank_note(rank) + "; no non-cusp point up to height " + std::to_string(cfg.height),
                   rank.resolution == RankResolution::Inconclusive && !has_rank_data(oracle, e.label, d));
  }
  HyperCurve C = e.hyper();
  JacTorsion T = hj_torsion_over_K(C, K);
  if (!T.exact)
    return verdict(GroupStatus::Unresolved, e.label + " " + rank_note(rank) + "; torsion of the Jacobian not determined (order in [" +
                                                std::to_string(T.order_lo) + ", " + std::to_string(T.order_hi) + "])");
  HyperJacobian J(C, d);
  int conjugate = 0;
  for (const JacElemK& D : T.elements) {
    DivisorClass dc = hj_decode_mumford(J, J.to_triple(D));
    for (const Place& P : dc.support) {
      if (P.kind == Place::Kind::Conjugate) {
        ++conjugate;
        continue;
      }
      if (P.kind != Place::Kind::Affine) continue;
      if (!cusps.contains_affine(P.x, P.y))
        return verdict(GroupStatus::PossibleFinite, e.label + " " + rank_note(rank) + "; torsion class " + J.to_triple(D).str() +
                                                        " is supported on the non-cusp point " + P.str());
    }
  }
  std::string note = e.label + " " + rank_note(rank) + "; J(K)_tors = " + T.structure() + ", all " +
                     std::to_string(T.elements.size()) + " classes supported on cusps " + cusps.str();
  if (conjugate) note += " (" + std::to_string(conjugate) + " conjugate places off K)";
  return verdict(GroupStatus::Impossible, note);
}

void validate_field(long d) {
  if (d <= 1 || !is_squarefree(d)) throw std::invalid_argument("classification needs squarefree d > 1, got " + std::to_string(d));
}

std::string group_label(const TorsionGroupId& g) {
  return g.m == 1 ? "Z/" + std::to_string(g.n) : "Z/" + std::to_string(g.m) + "+Z/" + std::to_string(g.n);
}

}  // namespace

std::string to_string(GroupStatus s) {
  switch (s) {
    case GroupStatus::AlwaysPresent:
      return "AlwaysPresent";
    case GroupStatus::ExcludedCyclotomic:
      return "ExcludedCyclotomic";
    case GroupStatus::InfinitelyMany:
      return "InfinitelyMany";
    case GroupStatus::PossibleFinite:
      return "PossibleFinite";
    case GroupStatus::Impossible:
      return "Impossible";
    case GroupStatus::Unresolved:
      return "Unresolved";
  }
  return "?";
}

GroupStatus parse_status(const std::string& s) {
  for (GroupStatus g : kAll)
    if (to_string(g) == s) return g;
  throw std::invalid_argument("unknown status " + s);
}

bool occurs(GroupStatus s) {
  return s == GroupStatus::AlwaysPresent || s == GroupStatus::InfinitelyMany || s == GroupStatus::PossibleFinite;
}

bool is_mazur_group(const TorsionGroupId& g) {
  if (g.m == 1) return g.n <= 10 || g.n == 12;
  return g.m == 2 && g.n <= 8;
}

std::vector<TorsionGroupId> ClassificationRow::groups_with(std::initializer_list<GroupStatus> statuses) const {
  std::vector<TorsionGroupId> out;
  for (const auto& g : torsion_groups()) {
    if (is_mazur_group(g)) continue;
    auto it = entries.find(g);
    if (it != entries.end() && std::find(statuses.begin(), statuses.end(), it->second.status) != statuses.end())
      out.push_back(g);
  }
  return out;
}

GroupVerdict cl_classify_group(long d, const TorsionGroupId& g, const RankOracle& oracle, const ClassifyConfig& config) {
  validate_field(d);
  if (std::find(torsion_groups().begin(), torsion_groups().end(), g) == torsion_groups().end())
    throw std::invalid_argument(g.str() + " is not one of the 26 quadratic torsion groups");
  if (is_mazur_group(g)) return verdict(GroupStatus::AlwaysPresent, "genus 0 modular curve, occurs over every quadratic field");
  if (g.m == g.n) {
    const int zeta = g.m;
    return verdict(GroupStatus::ExcludedCyclotomic,
                   "Weil pairing forces Q(zeta_" + std::to_string(zeta) + ") in K, impossible for a real field");
  }
  if (g.m == 3) return verdict(GroupStatus::ExcludedCyclotomic, "Weil pairing forces Q(zeta_3) in K, impossible for a real field");
  const CatalogEntry* e = mc_entry_for(g);
  if (!e) throw std::logic_error("no catalog entry for " + g.str());
  return e->kind == ModelKind::Elliptic ? classify_elliptic(*e, d, oracle, config) : classify_hyper(*e, d, oracle, config);
}

ClassificationRow cl_classify_field(long d, const RankOracle& oracle, const ClassifyConfig& config) {
  validate_field(d);
  ClassificationRow row;
  row.d = d;
  row.outside_surveyed_range = d >= config.max_surveyed_d;
  for (const auto& g : torsion_groups()) row.entries[g] = cl_classify_group(d, g, oracle, config);
  return row;
}

std::vector<ClassificationRow> cl_classify_range(long lo, long hi, const RankOracle& oracle, const ClassifyConfig& config) {
  std::vector<long> ds;
  for (long d = std::max(lo, 2L); d <= hi; ++d)
    if (is_squarefree(d)) ds.push_back(d);
  std::vector<ClassificationRow> rows(ds.size());
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<size_t>(ds.size(), 1));
  if (threads <= 1) {
    for (size_t i = 0; i < ds.size(); ++i) rows[i] = cl_classify_field(ds[i], oracle, config);
    return rows;
  }
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < threads; ++t)
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (size_t i = t; i < ds.size(); i += threads) rows[i] = cl_classify_field(ds[i], oracle, config);
    }));
  for (auto& j : jobs) j.get();
  return rows;
}

EmitFormat parse_format(const std::string& s) {
  if (s == "text") return EmitFormat::Text;
  if (s == "csv") return EmitFormat::Csv;
  if (s == "json") return EmitFormat::Json;
  throw std::invalid_argument("unknown format " + s + " (text, csv or json)");
}

namespace {

std::string text_row(const ClassificationRow& row, bool full) {
  std::ostringstream os;
  os << "Q(sqrt(" << row.d << "))" << (row.outside_surveyed_range ? " [outside surveyed range]" : "") << "\n";
  if (full) {
    for (const auto& g : torsion_groups()) {
      const GroupVerdict& v = row.entries.at(g);
      os << "  " << g.str() << ": " << to_string(v.status) << " - " << v.provenance << "\n";
    }
    return os.str();
  }
  std::vector<std::string> cyc, two, cyc_maybe, two_maybe;
  for (const auto& g : torsion_groups()) {
    if (is_mazur_group(g)) continue;
    GroupStatus s = row.entries.at(g).status;
    if (!occurs(s) && s != GroupStatus::Unresolved) continue;
    bool maybe = s == GroupStatus::Unresolved;
    if (g.m == 1) {
      (maybe ? cyc_maybe : cyc).push_back(maybe ? "maybe Z/" + std::to_string(g.n) + "Z" : std::to_string(g.n));
    } else if (g.m == 2) {
      (maybe ? two_maybe : two)
          .push_back(maybe ? "maybe Z/2Z + Z/" + std::to_string(g.n) + "Z" : std::to_string(g.n / 2));
    }
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
  };
  auto line = [&](const std::string& family, const std::vector<std::string>& sure, const std::vector<std::string>& maybe) {
    if (sure.empty() && maybe.empty()) return;
    os << "  ";
    if (!sure.empty()) os << family << ", n = " << join(sure) << (maybe.empty() ? "" : "; ");
    os << join(maybe) << "\n";
  };
  line("Z/nZ", cyc, cyc_maybe);
  line("Z/2Z + Z/2nZ", two, two_maybe);
  cyc.insert(cyc.end(), cyc_maybe.begin(), cyc_maybe.end());
  two.insert(two.end(), two_maybe.begin(), two_maybe.end());
  if (cyc.empty() && two.empty()) os << "  none\n";
  return os.str();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string cl_emit(const std::vector<ClassificationRow>& rows, EmitFormat format, bool full) {
  if (rows.empty()) throw std::invalid_argument("nothing to emit");
  for (const auto& r : rows)
    if (r.entries.size() != torsion_groups().size()) throw std::invalid_argument("incomplete status map for d = " + std::to_string(r.d));
  std::ostringstream os;
  switch (format) {
    case EmitFormat::Text:
      for (const auto& r : rows) os << text_row(r, full);
      break;
    case EmitFormat::Csv:
      os << "d,group,status,missing_data,provenance\n";
      for (const auto& r : rows)
        for (const auto& g : torsion_groups()) {
          const GroupVerdict& v = r.entries.at(g);
          os << r.d << "," << group_label(g) << "," << to_string(v.status) << "," << (v.missing_data ? 1 : 0) << ","
             << csv_quote(v.provenance) << "\n";
        }
      break;
    case EmitFormat::Json: {
      nlohmann::ordered_json out = nlohmann::ordered_json::array();
      for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["d"] = r.d;
        row["outside_surveyed_range"] = r.outside_surveyed_range;
        nlohmann::ordered_json groups = nlohmann::ordered_json::array();
        for (const auto& g : torsion_groups()) {
          const GroupVerdict& v = r.entries.at(g);
          groups.push_back({{"group", group_label(g)},
                            {"m", g.m},
                            {"n", g.n},
                            {"status", to_string(v.status)},
                            {"missing_data", v.missing_data},
                            {"provenance", v.provenance}});
        }
        row["groups"] = groups;
        out.push_back(row);
      }
      os << out.dump(2) << "\n";
      break;
    }
  }
  return os.str();
}

std::vector<ClassificationRow> cl_parse_json(const std::string& text) {
  std::vector<ClassificationRow> rows;
  auto doc = nlohmann::json::parse(text);
  for (const auto& r : doc) {
    ClassificationRow row;
    row.d = r.at("d").get<long>();
    row.outside_surveyed_range = r.at("outside_surveyed_range").get<bool>();
    for (const auto& g : r.at("groups")) {
      TorsionGroupId id{g.at("m").get<int>(), g.at("n").get<int>()};
      row.entries[id] = {parse_status(g.at("status").get<std::string>()), g.at("provenance").get<std::string>(),
                         g.at("missing_data").get<bool>()};
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace quadtor
