#include "rotquad/records.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace rotquad {

ResultRecord make_record(std::string command, std::vector<std::pair<std::string, double>> inputs,
                         std::string quantity, cplx value, cplx reference, std::string provenance,
                         std::optional<Tolerance> tolerance, std::string note) {
  ResultRecord r;
  r.command = std::move(command);
  r.inputs = std::move(inputs);
  r.quantity = std::move(quantity);
  r.value = value;
  r.reference = reference;
  r.provenance = std::move(provenance);
  r.note = std::move(note);
  r.abs_dev = std::abs(value - reference);
  const double ref_mag = std::abs(reference);
  r.rel_dev = ref_mag > 0.0 ? r.abs_dev / ref_mag : std::numeric_limits<double>::quiet_NaN();
  if (tolerance) {
    r.checked = true;
    r.atol = tolerance->atol;
    r.rtol = tolerance->rtol;
    r.pass = r.abs_dev <= r.atol + r.rtol * ref_mag;  // false for NaN
  }
  return r;
}

bool all_pass(const std::vector<ResultRecord>& records) {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

std::string format_number(double v) {
  if (std::isnan(v)) return {};
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, end);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

const std::vector<std::string>& fixed_columns() {
  static const std::vector<std::string> cols = {
      "quantity", "value_re", "value_im", "reference_re", "reference_im", "provenance", "uncertainty",
      "abs_dev",  "rel_dev",  "atol",     "rtol",         "checked",      "pass",       "note"};
  return cols;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ResultRecord>& records) {
  std::vector<std::string> input_names;
  if (!records.empty())
    for (const auto& [name, _] : records.front().inputs) input_names.push_back(name);

  bool first = true;
  for (const auto& name : input_names) {
    os << (first ? "" : ",") << csv_field(name);
    first = false;
  }
  for (const auto& name : fixed_columns()) {
    os << (first ? "" : ",") << name;
    first = false;
  }
  os << "\r\n";

  for (const auto& r : records) {
    if (r.inputs.size() != input_names.size())
      throw std::logic_error("write_csv: records of one command must share input columns");
    std::vector<std::string> fields;
    for (std::size_t i = 0; i < r.inputs.size(); ++i) {
      if (r.inputs[i].first != input_names[i])
        throw std::logic_error("write_csv: records of one command must share input columns");
      fields.push_back(format_number(r.inputs[i].second));
    }
    fields.push_back(csv_field(r.quantity));
    fields.push_back(format_number(r.value.real()));
    fields.push_back(format_number(r.value.imag()));
    fields.push_back(format_number(r.reference.real()));
    fields.push_back(format_number(r.reference.imag()));
    fields.push_back(csv_field(r.provenance));
    fields.push_back(format_number(r.uncertainty));
    fields.push_back(format_number(r.abs_dev));
    fields.push_back(format_number(r.rel_dev));
    fields.push_back(r.checked ? format_number(r.atol) : std::string{});
    fields.push_back(r.checked ? format_number(r.rtol) : std::string{});
    fields.push_back(r.checked ? "true" : "false");
    fields.push_back(r.pass ? "true" : "false");
    fields.push_back(csv_field(r.note));
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i];
    os << "\r\n";
  }
}

void write_json(std::ostream& os, const std::vector<ResultRecord>& records) {
  auto number = [](double v) -> nlohmann::json {
    if (std::isnan(v)) return nullptr;
    return v;
  };
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& [name, v] : r.inputs) inputs[name] = number(v);
    nlohmann::json obj = nlohmann::json::object();
    obj["command"] = r.command;
    obj["inputs"] = inputs;
    obj["quantity"] = r.quantity;
    obj["value"] = {number(r.value.real()), number(r.value.imag())};
    obj["reference"] = {number(r.reference.real()), number(r.reference.imag())};
    obj["provenance"] = r.provenance;
    obj["uncertainty"] = number(r.uncertainty);
    obj["abs_dev"] = number(r.abs_dev);
    obj["rel_dev"] = number(r.rel_dev);
    obj["checked"] = r.checked;
    obj["atol"] = r.checked ? number(r.atol) : nlohmann::json(nullptr);
    obj["rtol"] = r.checked ? number(r.rtol) : nlohmann::json(nullptr);
    obj["pass"] = r.pass;
    obj["note"] = r.note;
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << "\n";
}

}  // namespace rotquad
