#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <stdexcept>
#include <string>

#include "quadtor/classify.hpp"
#include "quadtor/hyperjac.hpp"
#include "quadtor/modcurves.hpp"
#include "quadtor/rankoracle.hpp"

using namespace quadtor;

namespace {

constexpr int kOk = 0;
constexpr int kDataError = 2;
constexpr int kMissingData = 3;

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<long, long> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) throw DataError("range must look like 2..100");
  try {
    return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw DataError("range must look like 2..100");
  }
}

void require_field(long d) {
  if (d <= 1 || !is_squarefree(d)) throw DataError("--d must be a squarefree integer > 1");
}

int run_classify(long d, const std::string& range, const std::vector<std::string>& rank_files, long height,
                 const std::string& format, bool full, bool strict, unsigned threads) {
  RankOracle oracle = RankOracle::with_builtin_data();
  for (const auto& f : rank_files) {
    try {
      oracle.load_file(f);
    } catch (const std::runtime_error& e) {
      throw DataError(e.what());
    }
  }
  ClassifyConfig cfg;
  cfg.height = height;
  cfg.threads = threads;
  EmitFormat fmt;
  try {
    fmt = parse_format(format);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  std::vector<ClassificationRow> rows;
  if (!range.empty()) {
    auto [lo, hi] = parse_range(range);
    if (lo > hi || hi < 2) throw DataError("empty range " + range);
    rows = cl_classify_range(lo, hi, oracle, cfg);
  } else {
    require_field(d);
    rows.push_back(cl_classify_field(d, oracle, cfg));
  }
  for (const auto& r : rows)
    if (r.outside_surveyed_range) std::cerr << "note: d = " << r.d << " is outside the surveyed range\n";
  std::cout << cl_emit(rows, fmt, full);
  if (strict) {
    for (const auto& r : rows)
      for (const auto& [g, v] : r.entries)
        if (v.status == GroupStatus::Unresolved && v.missing_data) return kMissingData;
  }
  return kOk;
}

int run_catalog() {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& e : mc_catalog()) {
    nlohmann::ordered_json j;
    j["label"] = e.label;
    j["group"] = e.target.str();
    j["kind"] = to_string(e.kind);
    j["equation"] = e.equation;
    if (e.kind == ModelKind::Elliptic) {
      j["ainvs"] = e.ainvs;
    } else {
      j["f"] = e.f.str();
    }
    j["cusp_x"] = e.cusp_x.str();
    j["infinity"] = e.infinity;
    j["screen"] = to_string(e.screen);
    out.push_back(j);
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int run_search(const std::string& label, long d, long height) {
  const CatalogEntry& e = mc_entry(label);
  require_field(d);
  QuadField K(d);
  CuspSet cusps = mc_cusps_over_K(e, K);
  if (e.kind == ModelKind::Elliptic) {
    EllipticCurveK E = e.elliptic(d);
    TorsionDesc T = ec_torsion_over_K(e.elliptic(), K);
    std::cout << label << " over Q(sqrt(" << d << ")), torsion " << T.structure() << "\n";
    for (const ECPointK& P : ec_point_search(E, K, height)) {
      auto ord = ec_point_order(E, P, T.n);
      std::cout << "  " << to_string(P) << "  " << (ord ? "order " + std::to_string(*ord) : "infinite order")
                << (cusps.contains_affine(P.x, P.y) ? "  cusp" : "") << "\n";
    }
  } else {
    std::cout << label << " over Q(sqrt(" << d << "))\n";
    for (const auto& [x, y] : hj_point_search(e.hyper(), d, height))
      std::cout << "  (" << x.str() << ", " << y.str() << ")" << (cusps.contains_affine(x, y) ? "  cusp" : "") << "\n";
  }
  return kOk;
}

void print_divisor(const HyperJacobian& J, const MumfordTriple& t, const CuspSet& cusps) {
  DivisorClass dc = hj_decode_mumford(J, t);
  bool on_cusps = true;
  for (const Place& P : dc.support)
    if (P.kind == Place::Kind::Affine && !cusps.contains_affine(P.x, P.y)) on_cusps = false;
  auto ord = J.arith().order(J.from_triple(t), 10000);
  std::cout << "  " << t.str() << " -> " << dc.str() << "  order " << (ord ? std::to_string(*ord) : "> 10000")
            << (on_cusps ? "  cusp-supported" : "  NON-CUSP") << "\n";
}

int run_decode(const std::string& label, const std::string& triple, long d) {
  const CatalogEntry& e = mc_entry(label);
  if (e.kind != ModelKind::Hyperelliptic) throw DataError(label + " is not hyperelliptic");
  if (d != 0) require_field(d);
  HyperJacobian J(e.hyper(), d);
  MumfordTriple t;
  try {
    t = parse_triple(triple, d);
    J.from_triple(t);
  } catch (const std::exception& ex) {
    throw DataError(ex.what());
  }
  print_divisor(J, t, mc_cusps_over_K(e, d));
  return kOk;
}

int run_torsion(const std::string& label, long d) {
  const CatalogEntry& e = mc_entry(label);
  require_field(d);
  QuadField K(d);
  CuspSet cusps = mc_cusps_over_K(e, K);
  std::cout << label << " over Q(sqrt(" << d << ")), cusps " << cusps.str() << "\n";
  if (e.kind == ModelKind::Elliptic) {
    TorsionDesc T = ec_torsion_over_K(e.elliptic(), K);
    std::cout << "torsion " << T.structure() << " (bound " << T.bound << ")\n";
    for (const ECPointK& P : T.points)
      std::cout << "  " << to_string(P) << (P.inf || cusps.contains_affine(P.x, P.y) ? "  cusp" : "  NON-CUSP") << "\n";
    return kOk;
  }
  JacTorsion T = hj_torsion_over_K(e.hyper(), K);
  std::cout << "J(K)_tors " << T.structure() << " (bound " << T.bound << ", 2-rank " << T.two_rank << ")\n";
  HyperJacobian J(e.hyper(), d);
  for (const JacElemK& D : T.elements) print_divisor(J, J.to_triple(D), cusps);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Torsion groups of elliptic curves over real quadratic fields"};
  app.require_subcommand(1);

  long d = 17, height = 16;
  std::string range, format = "text", label, triple;
  std::vector<std::string> rank_files;
  bool full = false, strict = false;
  unsigned threads = 0;

  auto* classify = app.add_subcommand("classify", "decide which of the 26 groups occur over Q(sqrt d)");
  classify->add_option("--d", d, "squarefree d > 1");
  classify->add_option("--range", range, "squarefree d in lo..hi");
  classify->add_option("--rank-data", rank_files, "rank data file(s): label,d,rank_lo,rank_hi");
  classify->add_option("--height", height, "search height for points on the modular curves");
  classify->add_option("--format", format, "text, csv or json");
  classify->add_flag("--full", full, "list all 26 groups with provenance");
  classify->add_flag("--strict", strict, "exit 3 when a group is unresolved for lack of rank data");
  classify->add_option("--threads", threads, "worker threads for --range (0: all cores)");

  auto* catalog = app.add_subcommand("catalog", "dump the modular curve catalog as JSON");

  long sd = 17, sheight = 10;
  auto* search = app.add_subcommand("search", "list points of bounded height on a catalog curve");
  search->add_option("--curve", label, "catalog label, e.g. X1_11")->required();
  search->add_option("--d", sd, "squarefree d > 1");
  search->add_option("--height", sheight, "height bound");

  long dd = 0;
  std::string dlabel;
  auto* decode = app.add_subcommand("decode", "decode a Mumford triple (a|b|d) on a hyperelliptic catalog curve");
  decode->add_option("--curve", dlabel, "catalog label, e.g. X1_16")->required();
  decode->add_option("--triple", triple, "triple such as \"(x^2+2x+1|2x|2)\"")->required();
  decode->add_option("--d", dd, "work over Q(sqrt d); 0 for Q");

  long td = 17;
  std::string tlabel;
  auto* torsion = app.add_subcommand("torsion", "torsion of a catalog curve or its Jacobian over Q(sqrt d)");
  torsion->add_option("--curve", tlabel, "catalog label")->required();
  torsion->add_option("--d", td, "squarefree d > 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kDataError;
  }

  try {
    if (*classify) return run_classify(d, range, rank_files, height, format, full, strict, threads);
    if (*catalog) return run_catalog();
    if (*search) return run_search(label, sd, sheight);
    if (*decode) return run_decode(dlabel, triple, dd);
    if (*torsion) return run_torsion(tlabel, td);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kOk;
}
