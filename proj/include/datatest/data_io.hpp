// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DATATEST_DATA_IO_HPP
#define DATATEST_DATA_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "datatest/audit.hpp"
#include "datatest/neyman_pearson.hpp"

// File ingestion: delimited group data (long or wide), counts matrices,
// p-value lists, analysis traces, and frozen design files.
namespace datatest::data_io {

struct GroupData {
  std::vector<std::string> names;
  std::vector<std::vector<double>> groups;
};

// Comma- or tab-delimited with a header row. A two-column header of
// "group,value" is read as long format (label, observation); anything else
// is wide format, one column per group, ragged columns allowed.
GroupData parse_group_data(std::istream& in, const std::string& source_name);
GroupData read_group_file(const std::string& path);

// Delimited non-negative integer counts, no header.
std::vector<std::vector<double>> parse_counts(std::istream& in,
                                              const std::string& source_name);
std::vector<std::vector<double>> read_counts_file(const std::string& path);

// One p-value per line; blank lines and # comments skipped.
std::vector<double> parse_p_values(std::istream& in,
                                   const std::string& source_name);
std::vector<double> read_p_values_file(const std::string& path);

// Line-oriented trace records: `phase event key=value ...`, for example
// `apriori set_alpha level=0.05`. Phases: apriori | aposteriori.
audit::AnalysisTrace parse_trace(std::istream& in,
                                 const std::string& source_name);
audit::AnalysisTrace read_trace_file(const std::string& path);

// Frozen designs round-trip through a JSON design file, so freezing holds
// across process boundaries.
void write_design_file(const np::AcceptanceDesign& design,
                       const std::string& path);
np::AcceptanceDesign read_design_file(const std::string& path);

}  // namespace datatest::data_io

#endif  // DATATEST_DATA_IO_HPP
