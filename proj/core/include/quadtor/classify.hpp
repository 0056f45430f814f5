#pragma once

#include <map>
#include <string>
#include <vector>

#include "quadtor/modcurves.hpp"
#include "quadtor/rankoracle.hpp"

namespace quadtor {

enum class GroupStatus { AlwaysPresent, ExcludedCyclotomic, InfinitelyMany, PossibleFinite, Impossible, Unresolved };

std::string to_string(GroupStatus s);
GroupStatus parse_status(const std::string& s);
// Statuses under which the group occurs over the field.
bool occurs(GroupStatus s);
bool is_mazur_group(const TorsionGroupId& g);

struct GroupVerdict {
  GroupStatus status = GroupStatus::Unresolved;
  std::string provenance;
  bool missing_data = false;  // Unresolved only because no rank record was available

  bool operator==(const GroupVerdict& o) const {
    return status == o.status && provenance == o.provenance && missing_data == o.missing_data;
  }
};

struct ClassifyConfig {
  long height = 16;      // point searches on the modular curves
  long max_surveyed_d = 100;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct ClassificationRow {
  long d = 0;
  bool outside_surveyed_range = false;
  std::map<TorsionGroupId, GroupVerdict> entries;

  bool operator==(const ClassificationRow& o) const {
    return d == o.d && outside_surveyed_range == o.outside_surveyed_range && entries == o.entries;
  }
  // Beyond-Mazur groups with the given statuses.
  std::vector<TorsionGroupId> groups_with(std::initializer_list<GroupStatus> statuses) const;
};

GroupVerdict cl_classify_group(long d, const TorsionGroupId& g, const RankOracle& oracle, const ClassifyConfig& config = {});
ClassificationRow cl_classify_field(long d, const RankOracle& oracle, const ClassifyConfig& config = {});
// Squarefree d in [lo, hi], in increasing order.
std::vector<ClassificationRow> cl_classify_range(long lo, long hi, const RankOracle& oracle, const ClassifyConfig& config = {});

enum class EmitFormat { Text, Csv, Json };
EmitFormat parse_format(const std::string& s);

// Text lists the beyond-Mazur groups per field unless full is set; csv and json carry all 26 entries.
std::string cl_emit(const std::vector<ClassificationRow>& rows, EmitFormat format, bool full = false);
std::vector<ClassificationRow> cl_parse_json(const std::string& text);

}  // namespace quadtor
