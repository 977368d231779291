#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace disc {

using FieldValue = std::variant<std::string, double, std::uint64_t, bool, std::vector<double>>;

struct Field {
  std::string key;
  FieldValue value;
};

/// One task result: an ordered list of key/value fields.
class Record {
 public:
  Record() = default;
  explicit Record(std::string task) { set("task", std::move(task)); }

  Record& set(std::string key, FieldValue value);
  const FieldValue* find(const std::string& key) const;
  const std::vector<Field>& fields() const noexcept { return fields_; }

 private:
  std::vector<Field> fields_;
};

/// Fields with this key hold wall-clock seconds and can be left out.
inline constexpr const char* kTimeKey = "time";
inline constexpr int kReportFormat = 1;

struct RunReport {
  std::string command;
  std::vector<Record> records;
};

/// Throws NumericFailure if a number is not finite or a lower/upper pair is
/// out of order.
void validate(const RunReport& report);

/// Line-oriented form:
///   report format=1 command="..."
///   record task=... key=value ...
///   end records=N
/// Strings are quoted when they contain blanks, '=' or quotes; vectors are
/// comma-separated; reals use the shortest round-trip form.
void write_text(std::ostream& out, const RunReport& report, bool timing);

/// The same content as one JSON object.
void write_json(std::ostream& out, const RunReport& report, bool timing);

}  // namespace disc
