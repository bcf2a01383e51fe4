// Copyright 2026 The datatest Authors
// SPDX-License-Identifier: Apache-2.0

#include "datatest/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "datatest/errors.hpp"

namespace datatest::data_io {

namespace {

constexpr const char* kDesignFormatTag = "datatest-design-v1";

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, delim)) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == delim) cells.emplace_back();
  return cells;
}

double parse_double(const std::string& token, const std::string& source_name,
                    int line_number) {
  const char* begin = token.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(value))
    throw parse_error(source_name + ":" + std::to_string(line_number) +
                      ": not a number: '" + token + "'");
  return value;
}

char detect_delimiter(const std::string& header) {
  return header.find('\t') != std::string::npos ? '\t' : ',';
}

[[noreturn]] void fail(const std::string& source_name, int line_number,
                       const std::string& what) {
  throw parse_error(source_name + ":" + std::to_string(line_number) + ": " + what);
}

}  // namespace

GroupData parse_group_data(std::istream& in, const std::string& source_name) {
  std::string line;
  int line_number = 0;
  std::string header;
  while (std::getline(in, line)) {
    ++line_number;
    header = trim(line);
    if (!header.empty()) break;
  }
  if (header.empty()) throw parse_error(source_name + ": no header row");
  const char delim = detect_delimiter(header);
  std::vector<std::string> names = split(header, delim);

  GroupData data;
  const bool long_format =
      names.size() == 2 && lower(names[0]) == "group" && lower(names[1]) == "value";

  if (long_format) {
    std::map<std::string, std::size_t> index;
    while (std::getline(in, line)) {
      ++line_number;
      const std::string row = trim(line);
      if (row.empty()) continue;
      std::vector<std::string> cells = split(row, delim);
      if (cells.size() != 2 || cells[0].empty())
        fail(source_name, line_number, "expected 'group,value' row");
      auto [it, inserted] = index.try_emplace(cells[0], data.names.size());
      if (inserted) {
        data.names.push_back(cells[0]);
        data.groups.emplace_back();
      }
      data.groups[it->second].push_back(
          parse_double(cells[1], source_name, line_number));
    }
  } else {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty())
        throw parse_error(source_name + ": empty column name in header");
      for (std::size_t j = 0; j < i; ++j)
        if (names[i] == names[j])
          throw parse_error(source_name + ": duplicate column name '" + names[i] +
                            "'");
    }
    data.names = names;
    data.groups.assign(names.size(), {});
    while (std::getline(in, line)) {
      ++line_number;
      if (trim(line).empty()) continue;
      std::vector<std::string> cells = split(trim(line), delim);
      if (cells.size() > names.size())
        fail(source_name, line_number, "more cells than header columns");
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].empty()) continue;
        data.groups[i].push_back(parse_double(cells[i], source_name, line_number));
      }
    }
  }
  for (std::size_t i = 0; i < data.names.size(); ++i)
    if (data.groups[i].empty())
      throw data_error(source_name + ": group '" + data.names[i] +
                       "' has no observations");
  if (data.names.empty()) throw data_error(source_name + ": no groups");
  return data;
}

std::vector<std::vector<double>> parse_counts(std::istream& in,
                                              const std::string& source_name) {
  std::vector<std::vector<double>> table;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string row = trim(line);
    if (row.empty() || row[0] == '#') continue;
    std::replace(row.begin(), row.end(), ',', ' ');
    std::istringstream cells(row);
    std::vector<double> counts;
    std::string token;
    while (cells >> token) {
      double value = parse_double(token, source_name, line_number);
      if (value < 0.0 || value != std::floor(value))
        fail(source_name, line_number,
             "counts must be non-negative integers; got '" + token + "'");
      counts.push_back(value);
    }
    if (!table.empty() && counts.size() != table.front().size())
      fail(source_name, line_number, "ragged counts row");
    table.push_back(std::move(counts));
  }
  if (table.empty()) throw data_error(source_name + ": no counts");
  return table;
}

std::vector<double> parse_p_values(std::istream& in,
                                   const std::string& source_name) {
  std::vector<double> ps;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string row = trim(line);
    if (row.empty() || row[0] == '#') continue;
    std::replace(row.begin(), row.end(), ',', ' ');
    std::istringstream cells(row);
    std::string token;
    while (cells >> token) {
      double p = parse_double(token, source_name, line_number);
      if (p < 0.0 || p > 1.0)
        fail(source_name, line_number, "p-value outside [0, 1]: '" + token + "'");
      ps.push_back(p);
    }
  }
  if (ps.empty()) throw data_error(source_name + ": no p-values");
  return ps;
}

audit::AnalysisTrace parse_trace(std::istream& in,
                                 const std::string& source_name) {
  std::vector<audit::Event> events;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string row = trim(line);
    if (row.empty() || row[0] == '#') continue;
    std::istringstream tokens(row);
    std::string phase_name;
    std::string event_name;
    if (!(tokens >> phase_name >> event_name))
      fail(source_name, line_number, "expected 'phase event [key=value ...]'");
    std::map<std::string, std::string> attrs;
    std::string pair;
    while (tokens >> pair) {
      auto eq = pair.find('=');
      if (eq == std::string::npos || eq == 0)
        fail(source_name, line_number, "malformed attribute '" + pair + "'");
      attrs[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
    try {
      events.push_back(audit::Event::make(audit::phase_from_name(phase_name),
                                          audit::event_kind_from_name(event_name),
                                          std::move(attrs)));
    } catch (const datatest::error& e) {
      fail(source_name, line_number, e.what());
    }
  }
  return audit::AnalysisTrace::from_events(std::move(events));
}

void write_design_file(const np::AcceptanceDesign& design,
                       const std::string& path) {
  nlohmann::ordered_json j;
  j["format"] = kDesignFormatTag;
  j["test"] = design.test_kind() == fisher::TestKind::TwoSampleT
                  ? "t2"
                  : "chi2_independence";
  j["tails"] = design.tails() == np::Tails::One ? 1 : 2;
  j["expected_d"] = design.expected_es().d;
  if (design.expected_es().label) {
    switch (*design.expected_es().label) {
      case np::Convention::Small: j["effect_label"] = "small"; break;
      case np::Convention::Medium: j["effect_label"] = "medium"; break;
      case np::Convention::Large: j["effect_label"] = "large"; break;
    }
  }
  j["alpha"] = design.alpha();
  j["beta_target"] = design.beta_target();
  j["n_per_group"] = design.n_per_group();
  j["power"] = design.power();
  j["critical_value"] = design.critical_value();
  j["mes"] = design.mes();
  std::ofstream out(path);
  if (!out) throw data_error("cannot write design file: " + path);
  out << j.dump(2) << "\n";
}

np::AcceptanceDesign read_design_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open design file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path + ": invalid design JSON: " + e.what());
  }
  if (!j.is_object() || j.value("format", "") != kDesignFormatTag)
    throw parse_error(path + ": not a " + std::string(kDesignFormatTag) + " file");
  try {
    const std::string test = j.at("test").get<std::string>();
    fisher::TestKind kind;
    if (test == "t2") {
      kind = fisher::TestKind::TwoSampleT;
    } else if (test == "chi2_independence") {
      kind = fisher::TestKind::ChiSquareIndependence;
    } else {
      throw parse_error(path + ": unknown test '" + test + "'");
    }
    const int tails_n = j.at("tails").get<int>();
    if (tails_n != 1 && tails_n != 2)
      throw parse_error(path + ": tails must be 1 or 2");
    np::EffectSize es = np::EffectSize::custom(j.at("expected_d").get<double>());
    if (j.contains("effect_label")) {
      const std::string label = j.at("effect_label").get<std::string>();
      if (label == "small") es.label = np::Convention::Small;
      else if (label == "medium") es.label = np::Convention::Medium;
      else if (label == "large") es.label = np::Convention::Large;
      else throw parse_error(path + ": unknown effect_label '" + label + "'");
    }
    np::AcceptanceDesign design = np::restore_design(
        kind, tails_n == 1 ? np::Tails::One : np::Tails::Two, es,
        j.at("alpha").get<double>(), j.at("beta_target").get<double>(),
        j.at("n_per_group").get<int>());
    // Stored derived values must reproduce, or the file was edited by hand.
    const double stored_power = j.at("power").get<double>();
    const double stored_cv = j.at("critical_value").get<double>();
    if (std::fabs(stored_power - design.power()) > 1e-6 ||
        std::fabs(stored_cv - design.critical_value()) > 1e-6)
      throw data_error(path +
                       ": stored design quantities do not reproduce; the file "
                       "is inconsistent with its parameters");
    return design;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path + ": invalid design file: " + e.what());
  }
}

GroupData read_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open data file: " + path);
  return parse_group_data(in, path);
}

std::vector<std::vector<double>> read_counts_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open counts file: " + path);
  return parse_counts(in, path);
}

std::vector<double> read_p_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open p-values file: " + path);
  return parse_p_values(in, path);
}

audit::AnalysisTrace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open trace file: " + path);
  return parse_trace(in, path);
}

}  // namespace datatest::data_io
