#include "nvholo/emit.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace nvholo {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                    std::chars_format::general, 12);
  if (result.ec != std::errc())
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buffer, result.ptr);
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  if (header.empty()) throw std::invalid_argument("CsvWriter: empty header");
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out_ += ',';
    out_ += header[i];
  }
  out_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_)
    throw std::invalid_argument("CsvWriter: row width does not match header");
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out_ += ',';
    out_ += format_double(values[i]);
  }
  out_ += '\n';
  ++rows_;
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw std::invalid_argument("CsvWriter: row width does not match header");
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ',';
    out_ += cells[i];
  }
  out_ += '\n';
  ++rows_;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

std::string json_escape(const std::string& raw) {
  std::string out;
  out.reserve(raw.size() + 8);
  for (unsigned char c : raw) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

void JsonWriter::newline_indent() {
  out_ += '\n';
  out_.append(2 * container_is_object_.size(), ' ');
}

void JsonWriter::pre_value() {
  if (container_is_object_.empty()) return;  // root value
  if (container_is_object_.back() && !key_pending_)
    throw std::logic_error("JsonWriter: value inside object requires a key");
  if (!key_pending_) {
    if (!container_empty_.back()) out_ += ',';
    container_empty_.back() = false;
    newline_indent();
  }
  key_pending_ = false;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  if (container_is_object_.empty() || !container_is_object_.back())
    throw std::logic_error("JsonWriter: key outside of object");
  if (key_pending_) throw std::logic_error("JsonWriter: duplicate key call");
  if (!container_empty_.back()) out_ += ',';
  container_empty_.back() = false;
  newline_indent();
  out_ += '"';
  out_ += json_escape(name);
  out_ += "\": ";
  key_pending_ = true;
  return *this;
}

JsonWriter& JsonWriter::begin_object() {
  pre_value();
  out_ += '{';
  container_is_object_.push_back(true);
  container_empty_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  if (container_is_object_.empty() || !container_is_object_.back())
    throw std::logic_error("JsonWriter: end_object without matching begin");
  const bool was_empty = container_empty_.back();
  container_is_object_.pop_back();
  container_empty_.pop_back();
  if (!was_empty) newline_indent();
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  pre_value();
  out_ += '[';
  container_is_object_.push_back(false);
  container_empty_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  if (container_is_object_.empty() || container_is_object_.back())
    throw std::logic_error("JsonWriter: end_array without matching begin");
  const bool was_empty = container_empty_.back();
  container_is_object_.pop_back();
  container_empty_.pop_back();
  if (!was_empty) newline_indent();
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  pre_value();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<long long>(v)); }

JsonWriter& JsonWriter::value(long long v) {
  pre_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(unsigned long long v) {
  pre_value();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  pre_value();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  pre_value();
  out_ += '"';
  out_ += json_escape(v);
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

std::string JsonWriter::str() const {
  if (!container_is_object_.empty())
    throw std::logic_error("JsonWriter: str() with unclosed containers");
  return out_ + "\n";
}

// ---------------------------------------------------------------------------
// files
// ---------------------------------------------------------------------------

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace nvholo
