#include "discrepancy/report.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

#include "discrepancy/error.hpp"
#include "discrepancy/io.hpp"

namespace disc {

Record& Record::set(std::string key, FieldValue value) {
  for (auto& f : fields_) {
    if (f.key == key) {
      f.value = std::move(value);
      return *this;
    }
  }
  fields_.push_back({std::move(key), std::move(value)});
  return *this;
}

const FieldValue* Record::find(const std::string& key) const {
  for (const auto& f : fields_) {
    if (f.key == key) return &f.value;
  }
  return nullptr;
}

void validate(const RunReport& report) {
  for (const auto& r : report.records) {
    for (const auto& f : r.fields()) {
      if (const auto* d = std::get_if<double>(&f.value); d && !std::isfinite(*d)) {
        throw NumericFailure("field '" + f.key + "' is not finite");
      }
      if (const auto* v = std::get_if<std::vector<double>>(&f.value)) {
        for (double x : *v) {
          if (!std::isfinite(x)) throw NumericFailure("field '" + f.key + "' has a non-finite entry");
        }
      }
    }
    const auto* lo = r.find("lower");
    const auto* hi = r.find("upper");
    if (lo && hi && std::holds_alternative<double>(*lo) && std::holds_alternative<double>(*hi) &&
        std::get<double>(*lo) > std::get<double>(*hi)) {
      throw NumericFailure("interval with lower > upper");
    }
  }
}

namespace {

std::string quote(const std::string& s) {
  const bool plain = !s.empty() && s.find_first_of(" \t\n=\"\\") == std::string::npos;
  if (plain) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

struct TextValue {
  std::string operator()(const std::string& s) const { return quote(s); }
  std::string operator()(double d) const { return format_double(d); }
  std::string operator()(std::uint64_t u) const { return std::to_string(u); }
  std::string operator()(bool b) const { return b ? "true" : "false"; }
  std::string operator()(const std::vector<double>& v) const {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
    return out.empty() ? "\"\"" : out;
  }
};

struct JsonValue {
  nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  nlohmann::ordered_json operator()(double d) const { return d; }
  nlohmann::ordered_json operator()(std::uint64_t u) const { return u; }
  nlohmann::ordered_json operator()(bool b) const { return b; }
  nlohmann::ordered_json operator()(const std::vector<double>& v) const { return v; }
};

}  // namespace

void write_text(std::ostream& out, const RunReport& report, bool timing) {
  out << "report format=" << kReportFormat << " command=" << quote(report.command) << '\n';
  for (const auto& r : report.records) {
    out << "record";
    for (const auto& f : r.fields()) {
      if (!timing && f.key == kTimeKey) continue;
      out << ' ' << f.key << '=' << std::visit(TextValue{}, f.value);
    }
    out << '\n';
  }
  out << "end records=" << report.records.size() << '\n';
}

void write_json(std::ostream& out, const RunReport& report, bool timing) {
  nlohmann::ordered_json doc;
  doc["format"] = kReportFormat;
  doc["command"] = report.command;
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& r : report.records) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (const auto& f : r.fields()) {
      if (!timing && f.key == kTimeKey) continue;
      rec[f.key] = std::visit(JsonValue{}, f.value);
    }
    doc["records"].push_back(std::move(rec));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace disc
