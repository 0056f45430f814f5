#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "quadtor/ellcurve.hpp"
#include "quadtor/modcurves.hpp"

namespace quadtor {

enum class RankSource { BuiltIn, UserFile, SearchCertificate };
enum class RankResolution { Zero, Positive, Inconclusive };

std::string to_string(RankSource s);
std::string to_string(RankResolution r);

// Rank of the curve (or Jacobian) over Q for d = 1, of its twist by d over Q for d > 1,
// or over Q(sqrt d) itself when k_level is set. hi = nullopt means unbounded.
struct RankRecord {
  std::string label;
  long d = 1;
  bool k_level = false;
  int lo = 0;
  std::optional<int> hi;
  RankSource source = RankSource::UserFile;
  std::string origin;

  std::string key() const;
};

struct RankInfo {
  int lo = 0;
  std::optional<int> hi;
  RankResolution resolution = RankResolution::Inconclusive;
  std::string provenance;

  std::string interval() const;
};

class RankOracle {
 public:
  RankOracle() = default;
  // Values quoted for Q(sqrt 17).
  static RankOracle with_builtin_data();

  // Intersects with an existing record under the same key; throws std::runtime_error when empty.
  void add(const RankRecord& r);
  // Rank-data format: "label,d,lo,hi" with d = 1 for the base curve or "K:<m>" for Q(sqrt m);
  // hi may be "inf". '#' starts a comment line.
  size_t load_file(const std::string& path);
  size_t load_stream(std::istream& in, const std::string& origin);

  RankInfo rank_over_K(const std::string& label, long d) const;
  const std::map<std::string, RankRecord>& records() const { return records_; }

 private:
  const RankRecord* find(const std::string& label, long d, bool k_level) const;
  std::map<std::string, RankRecord> records_;
};

struct RankCertificate {
  ECPointK point;
  long torsion_exponent = 0;
  TorsionDesc torsion;
  std::vector<ECPointK> certified;  // every searched point of infinite order, in search order
  std::string str() const;
};

// Searches E(Q(sqrt d)) up to the height and returns the first point not killed by the torsion exponent.
std::optional<RankCertificate> rk_certify_positive(const CatalogEntry& e, long d, long height);

}  // namespace quadtor
