#pragma once

// Deterministic text emission: identical inputs must yield byte-identical
// CSV and JSON artifacts on every platform. All floating-point values are
// rendered through std::to_chars (locale-independent) at 12 significant
// digits, decimal point ".", line ending "\n".

#include <string>
#include <vector>

namespace nvholo {

// 12-significant-digit, locale-independent rendering
std::string format_double(double value);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<double>& values);
  // mixed row for sweep-style outputs (already formatted cells)
  void raw_row(const std::vector<std::string>& cells);
  int rows() const { return rows_; }
  const std::string& str() const { return out_; }

 private:
  std::string out_;
  size_t columns_ = 0;
  int rows_ = 0;
};

// order-preserving JSON emitter (keys appear exactly as written), 2-space
// indentation, "\n" line endings
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(unsigned long long v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  std::string str() const;

 private:
  void pre_value();
  void newline_indent();
  std::string out_;
  std::vector<bool> container_is_object_;
  std::vector<bool> container_empty_;
  bool key_pending_ = false;
};

std::string json_escape(const std::string& raw);

// write with trailing newline handling left to the caller; creates parent
// directories as needed
void write_text_file(const std::string& path, const std::string& content);

}  // namespace nvholo
