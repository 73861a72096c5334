#include "qmotion/trajectory.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "qmotion/errors.hpp"
#include "qmotion/version.hpp"

namespace qmotion {

std::string sci(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

std::string to_csv(const DataTable& t) {
  std::string out;
  out += "# qmotion ";
  out += kVersion;
  out += "\n";
  if (!t.title.empty()) {
    out += "# title: " + t.title + "\n";
  }
  for (const auto& [name, value] : t.params) {
    out += "# param: " + name + " = " + sci(value) + "\n";
  }
  for (const std::string& note : t.notes) {
    out += "# note: " + note + "\n";
  }
  out += t.x_label;
  for (const Series& s : t.series) {
    out += ",";
    out += s.label;
  }
  out += "\n";
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    out += sci(t.x[i]);
    for (const Series& s : t.series) {
      out += ",";
      out += i < s.values.size() ? sci(s.values[i]) : "nan";
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const DataTable& t) {
  nlohmann::ordered_json j;
  j["tool"] = {{"name", "qmotion"}, {"version", kVersion}};
  j["title"] = t.title;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [name, value] : t.params) params[name] = value;
  j["params"] = std::move(params);
  j["notes"] = t.notes;
  j["grid"] = {{"label", t.x_label}, {"values", t.x}};
  nlohmann::ordered_json series = nlohmann::ordered_json::array();
  for (const Series& s : t.series) {
    // NaN samples serialize as null.
    series.push_back({{"label", s.label}, {"values", s.values}});
  }
  j["series"] = std::move(series);
  return j.dump(2) + "\n";
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.push_back(line.substr(pos));
      return parts;
    }
    parts.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view field) {
  const std::string tmp(trim(field));
  if (tmp.empty()) throw IoError("empty numeric field in CSV");
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size()) {
    throw IoError("malformed numeric field in CSV: '" + tmp + "'");
  }
  return v;
}

}  // namespace

DataTable parse_csv(std::string_view text) {
  DataTable t;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = eol == std::string_view::npos
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '#') {
      std::string_view body = trim(line.substr(1));
      if (body.rfind("title:", 0) == 0) {
        t.title = std::string(trim(body.substr(6)));
      } else if (body.rfind("param:", 0) == 0) {
        const std::string_view assign = trim(body.substr(6));
        const std::size_t eq = assign.find('=');
        if (eq == std::string_view::npos) throw IoError("malformed param header line");
        t.params.emplace_back(std::string(trim(assign.substr(0, eq))),
                              parse_number(assign.substr(eq + 1)));
      } else if (body.rfind("note:", 0) == 0) {
        t.notes.emplace_back(trim(body.substr(5)));
      }
      continue;
    }

    const std::vector<std::string_view> fields = split(line, ',');
    if (!have_header) {
      if (fields.size() < 2) throw IoError("CSV header needs at least two columns");
      t.x_label = std::string(trim(fields[0]));
      for (std::size_t i = 1; i < fields.size(); ++i) {
        t.series.push_back({std::string(trim(fields[i])), {}});
      }
      have_header = true;
      continue;
    }
    if (fields.size() != t.series.size() + 1) {
      throw IoError("CSV row width does not match header");
    }
    t.x.push_back(parse_number(fields[0]));
    for (std::size_t i = 0; i < t.series.size(); ++i) {
      t.series[i].values.push_back(parse_number(fields[i + 1]));
    }
  }
  if (!have_header) throw IoError("CSV contains no column header");
  return t;
}

}  // namespace qmotion
